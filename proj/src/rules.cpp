#include "speedup/rules.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace speedup {

namespace {

void require_rational(Value v) {
  if (v.kind() != Value::Kind::Rational) {
    throw PartialRuleError("approximate-agreement rules need rational values, got " + v.to_string());
  }
}

// eps expressed over the denominator `den`, so results stay on the input grid.
std::int64_t eps_over(Value eps, std::int64_t den) {
  require_rational(eps);
  const __int128 scaled = static_cast<__int128>(eps.numerator()) * den;
  if (scaled % eps.denominator() != 0) {
    throw Error("eps " + eps.to_string() + " is not a multiple of 1/" + std::to_string(den));
  }
  return static_cast<std::int64_t>(scaled / eps.denominator());
}

Value min_value(Value a, Value b) { return compare_rational(a, b) <= 0 ? a : b; }

Value plus_eps(Value a, Value eps) {
  return Value::rational(a.numerator() + eps_over(eps, a.denominator()), a.denominator());
}

Value scaled(Value eps, std::int64_t factor) {
  require_rational(eps);
  return Value::rational(eps.numerator() * factor, eps.denominator());
}

std::pair<Value, Value> extremes(const RoundInput& in) {
  Value lo = in.values.begin()->second;
  Value hi = lo;
  for (const auto& [id, v] : in.values) {
    require_rational(v);
    if (compare_rational(v, lo) < 0) lo = v;
    if (compare_rational(v, hi) > 0) hi = v;
  }
  return {lo, hi};
}

}  // namespace

DecisionRule two_proc_approx_rule(Value eps) {
  require_rational(eps);
  return {"two-proc", [eps](const RoundInput& in) {
            if (in.values.size() == 1) return in.own();
            if (in.values.size() != 2) {
              throw PartialRuleError("two-process rule applied to a view of " +
                                     std::to_string(in.values.size()) + " processes");
            }
            const auto [lo, hi] = extremes(in);
            const Value z = min_value(hi, plus_eps(lo, eps));
            if (in.own() == hi) return z;
            return min_value(hi, plus_eps(z, eps));
          }};
}

std::array<Value, 4> two_proc_outputs(Value eps, Value y1, Value y2) {
  const auto rule = two_proc_approx_rule(eps);
  const ProcessId p1{1}, p2{2};
  return {rule.decide({p1, std::nullopt, {{p1, y1}}}),
          rule.decide({p2, std::nullopt, {{p1, y1}, {p2, y2}}}),
          rule.decide({p1, std::nullopt, {{p1, y1}, {p2, y2}}}),
          rule.decide({p2, std::nullopt, {{p2, y2}}})};
}

DecisionRule halving_rule(Value eps) {
  require_rational(eps);
  return {"halving", [eps](const RoundInput& in) {
            const auto [lo, hi] = extremes(in);
            return min_value(hi, plus_eps(lo, eps));
          }};
}

DecisionRule ts_consensus_rule() {
  return {"ts-consensus", [](const RoundInput& in) {
            if (!in.box) throw PartialRuleError("test&set rule needs a box output");
            if (*in.box == 1) return in.own();
            for (const auto& [id, v] : in.values) {
              if (id != in.self) return v;
            }
            throw MissingPeerValueError("process " + std::to_string(in.self.value) +
                                        " lost test&set without reading its peer");
          }};
}

std::vector<DecisionRule> halving_schedule(Value eps, int t) {
  std::vector<DecisionRule> out;
  for (int r = 1; r <= t; ++r) out.push_back(halving_rule(scaled(eps, std::int64_t{1} << (t - r))));
  return out;
}

std::vector<DecisionRule> two_proc_schedule(Value eps, int t) {
  std::vector<DecisionRule> out;
  for (int r = 1; r <= t; ++r) {
    std::int64_t factor = 1;
    for (int k = r; k < t; ++k) factor *= 3;
    out.push_back(two_proc_approx_rule(scaled(eps, factor)));
  }
  return out;
}

SimplicialMap materialize_rules(const Task& task, const ModelSpec& model,
                                const std::vector<DecisionRule>& rules) {
  const int t = static_cast<int>(rules.size());
  std::unordered_map<Vertex, Value, VertexHash> memo;

  // Decision of a round-r vertex; round 0 decides its input.
  std::function<Value(const Vertex&, int)> decide = [&](const Vertex& v, int r) -> Value {
    if (r == 0) return v.value;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    if (!v.value.is_view()) {
      throw PartialRuleError("vertex " + v.to_string() + " is not a round-" + std::to_string(r) +
                             " view");
    }
    RoundInput in{v.id, v.value.box(), {}};
    for (const auto& seen : v.value.seen()) in.values.emplace(seen.id, decide(seen, r - 1));
    if (!in.values.contains(v.id)) {
      throw PartialRuleError("view " + v.to_string() + " misses its owner's value");
    }
    const Value out = rules[static_cast<std::size_t>(r - 1)].decide(in);
    memo.emplace(v, out);
    return out;
  };

  SimplicialMap f;
  for (const auto& v : iterate(task.inputs, model, t).vertices()) {
    f.assignment.emplace(v, Vertex{v.id, decide(v, t)});
  }
  return f;
}

bool run_rule(const Task& task, const ModelSpec& model, const std::vector<DecisionRule>& rules) {
  return verify_map(task, model, static_cast<int>(rules.size()),
                    materialize_rules(task, model, rules));
}

std::vector<DecisionRule> named_rules(const std::string& name, const Task& task, int t) {
  if (name == "ts-consensus") return std::vector<DecisionRule>(static_cast<std::size_t>(t), ts_consensus_rule());
  if (name != "halving" && name != "two-proc") throw Error("unknown rule '" + name + "'");
  if (!task.family || task.family->m <= 0) {
    throw Error("rule '" + name + "' needs an approximate-agreement task");
  }
  const Value eps = Value::rational(task.family->eps_num, task.family->m);
  return name == "halving" ? halving_schedule(eps, t) : two_proc_schedule(eps, t);
}

}  // namespace speedup
