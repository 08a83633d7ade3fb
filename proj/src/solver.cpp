#include "speedup/solver.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace speedup {

const Vertex& SimplicialMap::at(const Vertex& v) const {
  auto it = assignment.find(v);
  if (it == assignment.end()) {
    throw PartialMapError("protocol vertex " + v.to_string() + " is unassigned");
  }
  return it->second;
}

Simplex SimplicialMap::image(const Simplex& s) const {
  std::vector<Vertex> out;
  out.reserve(s.size());
  for (const auto& v : s.vertices()) out.push_back(at(v));
  return Simplex(std::move(out));
}

namespace {

// Table constraint: the scope variables (in id order) must take one of the
// allowed value-index tuples.
struct Constraint {
  std::vector<int> scope;
  int table = 0;
};

struct Csp {
  std::vector<Vertex> variables;
  std::vector<std::vector<Vertex>> domains;
  std::vector<std::vector<std::vector<int>>> tables;
  std::vector<Constraint> constraints;
  std::vector<std::vector<int>> constraints_of;
};

Csp build_csp(const Task& task, const std::map<Simplex, ChromaticComplex>& carriers) {
  Csp csp;

  std::map<ProcessId, std::vector<Vertex>> candidates;
  for (const auto& v : task.outputs.vertices()) candidates[v.id].push_back(v);
  std::unordered_map<Vertex, int, VertexHash> candidate_index;
  for (const auto& [id, vs] : candidates) {
    for (std::size_t k = 0; k < vs.size(); ++k) candidate_index.emplace(vs[k], static_cast<int>(k));
  }

  std::vector<Vertex> vars;
  for (const auto& [sigma, carrier] : carriers) {
    for (const auto& facet : carrier.facets()) {
      vars.insert(vars.end(), facet.vertices().begin(), facet.vertices().end());
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::unordered_map<Vertex, int, VertexHash> var_index;
  for (std::size_t k = 0; k < vars.size(); ++k) var_index.emplace(vars[k], static_cast<int>(k));

  csp.domains.reserve(vars.size());
  for (const auto& v : vars) {
    auto it = candidates.find(v.id);
    csp.domains.push_back(it == candidates.end() ? std::vector<Vertex>{} : it->second);
  }
  csp.variables = std::move(vars);

  std::set<std::pair<std::vector<int>, int>> seen;
  for (const auto& [sigma, carrier] : carriers) {
    const auto sigma_ids = sigma.id_list();
    std::vector<std::vector<int>> table;
    for (const auto& tau : task.legal(sigma)) {
      std::vector<int> row;
      for (const auto& v : tau.vertices()) row.push_back(candidate_index.at(v));
      table.push_back(std::move(row));
    }
    const int table_id = static_cast<int>(csp.tables.size());
    csp.tables.push_back(std::move(table));
    for (const auto& rho : carrier.facets()) {
      if (rho.id_list() != sigma_ids) {
        throw Error("carrier facet " + rho.to_string() + " does not cover its input simplex");
      }
      std::vector<int> scope;
      for (const auto& v : rho.vertices()) scope.push_back(var_index.at(v));
      if (seen.emplace(scope, table_id).second) {
        csp.constraints.push_back({std::move(scope), table_id});
      }
    }
  }

  csp.constraints_of.resize(csp.variables.size());
  for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
    for (int var : csp.constraints[c].scope) csp.constraints_of[static_cast<std::size_t>(var)].push_back(static_cast<int>(c));
  }
  return csp;
}

// Backtracking search maintaining generalized arc consistency on the table
// constraints. Variables and values are tried in canonical order.
class Search {
 public:
  Search(const Csp& csp, std::uint64_t budget) : csp_(csp), budget_(budget) {
    alive_.resize(csp.variables.size());
    size_.resize(csp.variables.size());
    for (std::size_t v = 0; v < csp.variables.size(); ++v) {
      alive_[v].assign(csp.domains[v].size(), 1);
      size_[v] = static_cast<int>(csp.domains[v].size());
    }
    queued_.assign(csp.constraints.size(), 0);
  }

  std::optional<std::vector<int>> run() {
    ++explored_;
    for (std::size_t v = 0; v < size_.size(); ++v) {
      if (size_[v] == 0) return std::nullopt;
    }
    std::vector<int> all(csp_.constraints.size());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = static_cast<int>(c);
    if (!propagate(all)) return std::nullopt;
    if (dfs(0)) return solution_;
    return std::nullopt;
  }

  std::uint64_t explored() const { return explored_; }

 private:
  bool dfs(std::size_t from) {
    std::size_t var = from;
    while (var < size_.size() && size_[var] == 1) ++var;
    if (var == size_.size()) {
      solution_.assign(size_.size(), -1);
      for (std::size_t v = 0; v < size_.size(); ++v) {
        for (std::size_t k = 0; k < alive_[v].size(); ++k) {
          if (alive_[v][k]) solution_[v] = static_cast<int>(k);
        }
      }
      return true;
    }
    for (std::size_t k = 0; k < alive_[var].size(); ++k) {
      if (!alive_[var][k]) continue;
      if (budget_ != 0 && explored_ >= budget_) throw ResourceLimitError(budget_);
      ++explored_;
      const std::size_t mark = trail_.size();
      for (std::size_t other = 0; other < alive_[var].size(); ++other) {
        if (other != k && alive_[var][other]) remove(static_cast<int>(var), static_cast<int>(other));
      }
      if (propagate(csp_.constraints_of[var]) && dfs(var + 1)) return true;
      undo(mark);
    }
    return false;
  }

  void remove(int var, int val) {
    alive_[static_cast<std::size_t>(var)][static_cast<std::size_t>(val)] = 0;
    --size_[static_cast<std::size_t>(var)];
    trail_.emplace_back(var, val);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [var, val] = trail_.back();
      trail_.pop_back();
      alive_[static_cast<std::size_t>(var)][static_cast<std::size_t>(val)] = 1;
      ++size_[static_cast<std::size_t>(var)];
    }
  }

  bool propagate(const std::vector<int>& seeds) {
    std::vector<int> queue;
    for (int c : seeds) {
      if (!queued_[static_cast<std::size_t>(c)]) {
        queued_[static_cast<std::size_t>(c)] = 1;
        queue.push_back(c);
      }
    }
    bool ok = true;
    std::size_t head = 0;
    while (head < queue.size()) {
      const int c = queue[head++];
      queued_[static_cast<std::size_t>(c)] = 0;
      if (!ok) continue;
      if (!revise(csp_.constraints[static_cast<std::size_t>(c)], queue)) ok = false;
    }
    return ok;
  }

  bool revise(const Constraint& c, std::vector<int>& queue) {
    const auto& table = csp_.tables[static_cast<std::size_t>(c.table)];
    const std::size_t arity = c.scope.size();
    support_.resize(arity);
    for (std::size_t p = 0; p < arity; ++p) {
      support_[p].assign(alive_[static_cast<std::size_t>(c.scope[p])].size(), 0);
    }
    for (const auto& row : table) {
      bool live = true;
      for (std::size_t p = 0; p < arity && live; ++p) {
        live = alive_[static_cast<std::size_t>(c.scope[p])][static_cast<std::size_t>(row[p])] != 0;
      }
      if (!live) continue;
      for (std::size_t p = 0; p < arity; ++p) support_[p][static_cast<std::size_t>(row[p])] = 1;
    }
    for (std::size_t p = 0; p < arity; ++p) {
      const int var = c.scope[p];
      auto& dom = alive_[static_cast<std::size_t>(var)];
      bool pruned = false;
      for (std::size_t k = 0; k < dom.size(); ++k) {
        if (dom[k] && !support_[p][k]) {
          remove(var, static_cast<int>(k));
          pruned = true;
        }
      }
      if (size_[static_cast<std::size_t>(var)] == 0) return false;
      if (pruned) {
        for (int other : csp_.constraints_of[static_cast<std::size_t>(var)]) {
          if (!queued_[static_cast<std::size_t>(other)]) {
            queued_[static_cast<std::size_t>(other)] = 1;
            queue.push_back(other);
          }
        }
      }
    }
    return true;
  }

  const Csp& csp_;
  std::uint64_t budget_;
  std::uint64_t explored_ = 0;
  std::vector<std::vector<char>> alive_;
  std::vector<int> size_;
  std::vector<char> queued_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<std::vector<char>> support_;
  std::vector<int> solution_;
};

}  // namespace

SolveVerdict solve_on_carriers(const Task& task, const std::map<Simplex, ChromaticComplex>& carriers,
                               const SolveOptions& options) {
  const Csp csp = build_csp(task, carriers);
  Search search(csp, options.node_budget);
  auto solution = search.run();
  SolveVerdict verdict;
  verdict.explored = search.explored();
  if (solution) {
    SimplicialMap f;
    for (std::size_t v = 0; v < csp.variables.size(); ++v) {
      f.assignment.emplace(csp.variables[v],
                           csp.domains[v][static_cast<std::size_t>((*solution)[v])]);
    }
    verdict.solvable = true;
    verdict.witness = std::move(f);
  }
  return verdict;
}

SolveVerdict solve(const Task& task, const ModelSpec& model, int t, const SolveOptions& options) {
  if (t < 0) throw Error("round count must be non-negative");
  return solve_on_carriers(task, protocol_carriers(task.inputs, model, t), options);
}

bool verify_map(const Task& task, const ModelSpec& model, int t, const SimplicialMap& f) {
  for (const auto& sigma : task.inputs.simplices()) {
    const auto& legal = task.legal(sigma);
    const auto carrier = iterate_simplex(sigma, model, t);
    for (const auto& rho : carrier.facets()) {
      for (const auto& v : rho.vertices()) {
        if (f.at(v).id != v.id) return false;
      }
      std::vector<Vertex> image;
      for (const auto& v : rho.vertices()) image.push_back(f.at(v));
      std::sort(image.begin(), image.end());
      const bool chromatic =
          std::adjacent_find(image.begin(), image.end(), [](const Vertex& a, const Vertex& b) {
            return a.id == b.id;
          }) == image.end();
      if (!chromatic) return false;
      const Simplex out(std::move(image));
      if (!task.outputs.contains(out)) return false;
      if (!std::binary_search(legal.begin(), legal.end(), out)) return false;
    }
  }
  return true;
}

}  // namespace speedup
