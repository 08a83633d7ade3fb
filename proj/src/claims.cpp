#include "speedup/claims.hpp"

#include "speedup/errors.hpp"
#include "speedup/rules.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <fnmatch.h>

namespace speedup {

namespace {

Simplex plain_simplex(int n) {
  std::vector<Vertex> vs;
  for (int i = 1; i <= n; ++i) vs.push_back({ProcessId{i}, Value::symbol("x")});
  return Simplex(std::move(vs));
}

IdSet first_ids(int n) {
  IdSet out;
  for (int i = 1; i <= n; ++i) out.insert(ProcessId{i});
  return out;
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome check_protocol(const Json& c) {
  const int n = c.at("n").get<int>();
  const auto model = model_from_json(c.at("model"));
  const auto k = iterate_simplex(plain_simplex(n), model, c.value("rounds", 1));
  const auto vertices = k.vertices().size();
  std::string detail = std::to_string(vertices) + " vertices, " + std::to_string(k.facet_count()) + " facets";
  bool ok = vertices == c.at("vertices").get<std::size_t>();
  if (c.contains("facets")) {
    const auto& f = c.at("facets");
    const std::size_t expected = f.is_string() && f.get<std::string>() == "ordered-partitions"
                                     ? ordered_partitions(first_ids(n)).size()
                                     : f.get<std::size_t>();
    ok = ok && k.facet_count() == expected;
    detail += " (expected " + std::to_string(expected) + ")";
  }
  return {ok, detail};
}

// Assignment sets, keyed by participants, for up to `max_n` processes.
Outcome check_containment(const Json& c) {
  const int max_n = c.at("max_participants").get<int>();
  std::string detail;
  bool ok = true;
  for (int k = 1; k <= max_n; ++k) {
    const IdSet ids = first_ids(k);
    auto as_set = [&](Communication comm) {
      auto v = view_assignments(comm, ids);
      return std::set<ViewAssignment>(v.begin(), v.end());
    };
    const auto is = as_set(Communication::ImmediateSnapshot);
    const auto snap = as_set(Communication::Snapshot);
    const auto col = as_set(Communication::Collect);
    const bool inc = std::includes(snap.begin(), snap.end(), is.begin(), is.end()) &&
                     std::includes(col.begin(), col.end(), snap.begin(), snap.end());
    const bool strict = is.size() < snap.size() && snap.size() < col.size();
    ok = ok && inc && (k < max_n || strict);
    detail += "|I|=" + std::to_string(k) + ": " + std::to_string(is.size()) + "/" +
              std::to_string(snap.size()) + "/" + std::to_string(col.size()) + " ";
  }
  return {ok, detail};
}

Outcome check_solve(const Json& c, const Task& task, const ModelSpec& model) {
  SolveOptions opts;
  opts.node_budget = c.value("budget", std::uint64_t{0});
  const auto v = solve(task, model, c.at("rounds").get<int>(), opts);
  const bool want = c.at("expect").get<std::string>() == "solvable";
  return {v.solvable == want, std::string(v.solvable ? "solvable" : "unsolvable") + " after " +
                                  std::to_string(v.explored) + " nodes"};
}

Outcome check_closure(const Json& c, const Task& task, const ModelSpec& model, int threads) {
  ClosureOptions opts;
  opts.threads = threads;
  const Task closed = c.contains("beta") ? closure_beta(task, beta_from_json(c.at("beta")), opts)
                                         : closure(task, model, opts);
  const Task expected = task_from_json(c.at("expect"));
  const auto diff = first_difference(closed, expected);
  return {!diff, diff ? "differs on " + diff->to_string() : "equal to expected task"};
}

Outcome check_fixed_point(const Json& c, const Task& task, const ModelSpec& model, int threads) {
  ClosureOptions opts;
  opts.threads = threads;
  const bool fixed = is_fixed_point(task, model, opts);
  return {fixed == c.at("expect").get<bool>(), fixed ? "fixed point" : "not a fixed point"};
}

Outcome check_lower_bound(const Json& c, const Task& task, const ModelSpec& model, int threads) {
  LowerBoundOptions opts;
  opts.closure.threads = threads;
  if (c.contains("closed_form_factor")) opts.closed_form = scale_epsilon(c.at("closed_form_factor").get<int>());
  const auto r = lower_bound_chain(task, model, c.at("max_steps").get<int>(), opts);
  return {r.bound >= c.at("at_least").get<int>(),
          "bound " + std::to_string(r.bound) + (r.budget_exhausted ? " (budget exhausted)" : "")};
}

Outcome check_run_rule(const Json& c, const Task& task, const ModelSpec& model) {
  const auto rules = named_rules(c.at("rule").get<std::string>(), task, c.at("rounds").get<int>());
  const bool ok = run_rule(task, model, rules);
  return {ok == c.value("expect", true), ok ? "rule solves the task" : "rule fails"};
}

// Witness from a named rule or the solver, pushed through the speedup
// transform and checked against the closure one round earlier.
Outcome check_speedup(const Json& c, const Task& task, const ModelSpec& model, int threads) {
  const int t = c.at("rounds").get<int>();
  SimplicialMap f;
  if (c.contains("rule")) {
    f = materialize_rules(task, model, named_rules(c.at("rule").get<std::string>(), task, t));
  } else {
    auto v = solve(task, model, t);
    if (!v.solvable) return {false, "no witness: task unsolvable"};
    f = *v.witness;
  }
  const auto g = speedup_transform(task, model, t, f);
  ClosureOptions opts;
  opts.threads = threads;
  const bool ok = verify_map(closure(task, model, opts), model, t - 1, g);
  return {ok, ok ? "transformed map solves the closure" : "transformed map rejected"};
}

}  // namespace

std::vector<Json> select_claims(const Json& manifest, const std::string& pattern) {
  std::vector<Json> out;
  for (const auto& c : manifest.at("claims")) {
    if (fnmatch(pattern.c_str(), c.at("id").get<std::string>().c_str(), 0) == 0) out.push_back(c);
  }
  return out;
}

ClaimResult run_claim(const Json& claim, int threads) {
  ClaimResult result;
  result.id = claim.value("id", std::string("?"));
  result.description = claim.value("description", std::string());
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string check = claim.at("check").get<std::string>();
    Outcome o{false, ""};
    if (check == "protocol") {
      o = check_protocol(claim);
    } else if (check == "containment") {
      o = check_containment(claim);
    } else {
      const Task task = task_from_json(claim.at("task"));
      const ModelSpec model = claim.contains("model") ? model_from_json(claim.at("model")) : ModelSpec::iis();
      if (check == "solve") o = check_solve(claim, task, model);
      else if (check == "closure") o = check_closure(claim, task, model, threads);
      else if (check == "fixed_point") o = check_fixed_point(claim, task, model, threads);
      else if (check == "lower_bound") o = check_lower_bound(claim, task, model, threads);
      else if (check == "run_rule") o = check_run_rule(claim, task, model);
      else if (check == "speedup") o = check_speedup(claim, task, model, threads);
      else throw ParseError("unknown check '" + check + "'");
    }
    result.passed = o.passed;
    result.detail = o.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string default_claims_path() { return SPEEDUP_CLAIMS_FILE; }

}  // namespace speedup
