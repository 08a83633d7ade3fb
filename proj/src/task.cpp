#include "speedup/task.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace speedup {

const std::vector<Simplex>& Task::legal(const Simplex& sigma) const {
  auto it = delta.find(sigma);
  if (it == delta.end()) {
    throw Error("simplex " + sigma.to_string() + " is not an input simplex of the task");
  }
  return it->second;
}

void validate_task(const Task& task) {
  const auto simplices = task.inputs.simplices();
  if (simplices.size() != task.delta.size()) {
    throw Error("delta must be defined on exactly the input simplices");
  }
  std::unordered_set<Simplex, SimplexHash> output_simplices;
  for (auto& s : task.outputs.simplices()) output_simplices.insert(std::move(s));
  for (const auto& sigma : simplices) {
    auto it = task.delta.find(sigma);
    if (it == task.delta.end()) {
      throw Error("delta is undefined on input simplex " + sigma.to_string());
    }
    const auto sigma_ids = sigma.id_list();
    for (const auto& tau : it->second) {
      if (tau.id_list() != sigma_ids) {
        throw Error("delta" + sigma.to_string() + " contains " + tau.to_string() +
                    " with different ids");
      }
      if (!output_simplices.contains(tau)) {
        throw Error("delta" + sigma.to_string() + " contains " + tau.to_string() +
                    " which is not an output simplex");
      }
    }
  }
}

Task make_task(ChromaticComplex inputs, ChromaticComplex outputs,
               std::map<Simplex, std::vector<Simplex>> delta) {
  for (auto& [sigma, taus] : delta) {
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  }
  Task task{std::move(inputs), std::move(outputs), std::move(delta), std::nullopt};
  validate_task(task);
  return task;
}

namespace {

// Calls `emit` with every chromatic simplex on exactly `ids` whose vertex for
// id ids[k] takes a value from `values`.
void for_each_assignment(const std::vector<ProcessId>& ids, const std::vector<Value>& values,
                         const std::function<void(std::vector<Vertex>&)>& emit) {
  std::vector<Vertex> current;
  current.reserve(ids.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == ids.size()) {
      emit(current);
      return;
    }
    for (const auto& v : values) {
      current.push_back({ids[k], v});
      rec(k + 1);
      current.pop_back();
    }
  };
  rec(0);
}

std::vector<ProcessId> all_ids(int n) {
  std::vector<ProcessId> out;
  for (int i = 1; i <= n; ++i) out.push_back({i});
  return out;
}

// Every chromatic simplex over [n] with values drawn from `values`.
ChromaticComplex full_complex(int n, const std::vector<Value>& values) {
  std::vector<Simplex> facets;
  for_each_assignment(all_ids(n), values,
                      [&](std::vector<Vertex>& vs) { facets.emplace_back(vs); });
  return ChromaticComplex::from_facets(std::move(facets), n);
}

Simplex uniform(const IdSet& ids, Value v) {
  std::vector<Vertex> vs;
  for (auto id : ids) vs.push_back({id, v});
  return Simplex(std::move(vs));
}

bool mixed(const Simplex& sigma) {
  const auto& vs = sigma.vertices();
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Vertex& v) { return v.value != vs.front().value; });
}

Task consensus_like(int n, bool weak) {
  const std::vector<Value> bits = {Value::bit(0), Value::bit(1)};
  auto inputs = full_complex(n, bits);

  std::vector<Simplex> out_facets = {uniform(inputs.ids(), bits[0]),
                                     uniform(inputs.ids(), bits[1])};
  if (weak) {
    // Disagreeing pairs are legal outputs for two participants.
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        out_facets.push_back(Simplex{{{i}, bits[0]}, {{j}, bits[1]}});
        out_facets.push_back(Simplex{{{i}, bits[1]}, {{j}, bits[0]}});
      }
    }
  }
  auto outputs = ChromaticComplex::from_facets(std::move(out_facets), n);

  std::map<Simplex, std::vector<Simplex>> delta;
  for (const auto& sigma : inputs.simplices()) {
    std::vector<Simplex> legal;
    const IdSet ids = sigma.ids();
    if (!mixed(sigma)) {
      legal.push_back(sigma);
    } else if (weak && ids.size() <= 2) {
      for_each_assignment(sigma.id_list(), bits,
                          [&](std::vector<Vertex>& vs) { legal.emplace_back(vs); });
    } else {
      legal.push_back(uniform(ids, bits[0]));
      legal.push_back(uniform(ids, bits[1]));
    }
    delta.emplace(sigma, std::move(legal));
  }
  Task task = make_task(std::move(inputs), std::move(outputs), std::move(delta));
  task.family = TaskFamily{weak ? "weak_consensus" : "consensus", n, 0, 0};
  return task;
}

std::vector<Value> grid(int m) {
  std::vector<Value> out;
  for (int k = 0; k <= m; ++k) out.push_back(Value::rational(k, m));
  return out;
}

void check_grid(int n, int m, int eps_num) {
  if (m <= 0 || eps_num <= 0) {
    throw BadGridError("approximate agreement needs m >= 1 and eps_num >= 1");
  }
  if (n < 2) throw Error("tasks need at least two processes");
}

std::int64_t spread(const std::vector<Vertex>& vs) {
  auto [lo, hi] = std::minmax_element(vs.begin(), vs.end(), [](const Vertex& a, const Vertex& b) {
    return a.value.numerator() < b.value.numerator();
  });
  return hi->value.numerator() - lo->value.numerator();
}

Task approx_like(int n, int m, int eps_num, bool liberal) {
  check_grid(n, m, eps_num);
  const auto values = grid(m);
  auto inputs = full_complex(n, values);

  std::vector<Simplex> out_facets;
  for_each_assignment(all_ids(n), values, [&](std::vector<Vertex>& vs) {
    if (spread(vs) <= eps_num) out_facets.emplace_back(vs);
  });
  if (liberal) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        for_each_assignment({{i}, {j}}, values,
                            [&](std::vector<Vertex>& vs) { out_facets.emplace_back(vs); });
      }
    }
  }
  auto outputs = ChromaticComplex::from_facets(std::move(out_facets), n);

  std::map<Simplex, std::vector<Simplex>> delta;
  for (const auto& sigma : inputs.simplices()) {
    const std::int64_t lo = [&] {
      std::int64_t v = m;
      for (const auto& x : sigma.vertices()) v = std::min(v, x.value.numerator());
      return v;
    }();
    const std::int64_t hi = [&] {
      std::int64_t v = 0;
      for (const auto& x : sigma.vertices()) v = std::max(v, x.value.numerator());
      return v;
    }();
    std::vector<Value> in_range;
    for (std::int64_t k = lo; k <= hi; ++k) in_range.push_back(values[static_cast<std::size_t>(k)]);
    const bool pairwise = !(liberal && sigma.size() == 2);
    std::vector<Simplex> legal;
    for_each_assignment(sigma.id_list(), in_range, [&](std::vector<Vertex>& vs) {
      if (!pairwise || spread(vs) <= eps_num) legal.emplace_back(vs);
    });
    delta.emplace(sigma, std::move(legal));
  }
  Task task = make_task(std::move(inputs), std::move(outputs), std::move(delta));
  task.family = TaskFamily{liberal ? "liberal_approx" : "approx", n, m, eps_num};
  return task;
}

}  // namespace

Task binary_consensus(int n) {
  if (n < 2) throw Error("consensus needs at least two processes");
  return consensus_like(n, false);
}

Task weak_consensus(int n) {
  if (n < 3) throw Error("weak consensus needs at least three processes");
  return consensus_like(n, true);
}

Task approx_agreement(int n, int m, int eps_num) { return approx_like(n, m, eps_num, false); }

Task liberal_approx_agreement(int n, int m, int eps_num) {
  check_grid(n, m, eps_num);
  if (n < 3) throw Error("the liberal variant needs at least three processes");
  return approx_like(n, m, eps_num, true);
}

Task task_from_family(const TaskFamily& family) {
  if (family.kind == "consensus") return binary_consensus(family.n);
  if (family.kind == "weak_consensus") return weak_consensus(family.n);
  if (family.kind == "approx") return approx_agreement(family.n, family.m, family.eps_num);
  if (family.kind == "liberal_approx") {
    return liberal_approx_agreement(family.n, family.m, family.eps_num);
  }
  throw Error("unknown task kind '" + family.kind + "'");
}

std::optional<Simplex> first_difference(const Task& a, const Task& b) {
  if (!complexes_equal(a.inputs, b.inputs)) {
    throw InputMismatchError("tasks have different input complexes");
  }
  for (const auto& [sigma, legal] : a.delta) {
    if (b.legal(sigma) != legal) return sigma;
  }
  return std::nullopt;
}

bool tasks_equal(const Task& a, const Task& b) { return !first_difference(a, b).has_value(); }

}  // namespace speedup
