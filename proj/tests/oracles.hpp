#pragma once

// Slow, independent reference implementations used to cross-check the
// library in tests.

#include "speedup/solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using speedup::IdSet;
using speedup::ProcessId;
using speedup::ViewAssignment;

// Ordered set partitions of an n-set, counted as surjections onto {1..k}.
inline std::uint64_t ordered_partition_count(int n) {
  std::uint64_t total = 0;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        std::set<int> used(label.begin(), label.end());
        if (static_cast<int>(used.size()) == k) ++total;
        return;
      }
      for (int b = 0; b < k; ++b) {
        label[static_cast<std::size_t>(i)] = b;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return total;
}

// Views of every interleaving where each process writes, then reads the
// other registers one at a time in any order.
inline std::set<ViewAssignment> simulate_collect(const IdSet& ids) {
  struct Op {
    ProcessId who;
    bool write;
    ProcessId target;
  };
  std::set<ViewAssignment> out;
  const std::vector<ProcessId> procs(ids.begin(), ids.end());
  // Each process's program: write, then reads in a chosen order.
  std::vector<std::vector<Op>> programs(procs.size());
  std::function<void(std::size_t)> choose = [&](std::size_t p) {
    if (p == procs.size()) {
      std::vector<std::size_t> pc(procs.size(), 0);
      std::set<ProcessId> written;
      ViewAssignment views;
      for (auto id : procs) views[id] = {id};
      std::function<void()> step = [&] {
        bool done = true;
        for (std::size_t q = 0; q < procs.size(); ++q) {
          if (pc[q] == programs[q].size()) continue;
          done = false;
          const Op op = programs[q][pc[q]];
          const auto saved_views = views;
          const bool was_written = written.contains(op.who);
          if (op.write) written.insert(op.who);
          else if (written.contains(op.target)) views[op.who].insert(op.target);
          ++pc[q];
          step();
          --pc[q];
          views = saved_views;
          if (op.write && !was_written) written.erase(op.who);
        }
        if (done) out.insert(views);
      };
      step();
      return;
    }
    std::vector<ProcessId> others;
    for (auto id : procs) {
      if (id != procs[p]) others.push_back(id);
    }
    do {
      programs[p] = {{procs[p], true, procs[p]}};
      for (auto o : others) programs[p].push_back({procs[p], false, o});
      choose(p + 1);
    } while (std::next_permutation(others.begin(), others.end()));
  };
  choose(0);
  return out;
}

// Views of every interleaving of write; atomic snapshot per process.
inline std::set<ViewAssignment> simulate_snapshot(const IdSet& ids) {
  const std::vector<ProcessId> procs(ids.begin(), ids.end());
  // Sequence of 2n events; event (p, 0) write, (p, 1) snapshot.
  std::set<ViewAssignment> out;
  std::vector<int> stage(procs.size(), 0);
  std::set<ProcessId> written;
  ViewAssignment views;
  std::function<void()> step = [&] {
    bool done = true;
    for (std::size_t q = 0; q < procs.size(); ++q) {
      if (stage[q] == 2) continue;
      done = false;
      if (stage[q] == 0) {
        written.insert(procs[q]);
        stage[q] = 1;
        step();
        stage[q] = 0;
        written.erase(procs[q]);
      } else {
        views[procs[q]] = IdSet(written.begin(), written.end());
        stage[q] = 2;
        step();
        stage[q] = 1;
        views.erase(procs[q]);
      }
    }
    if (done) out.insert(views);
  };
  step();
  return out;
}

// Immediate snapshot: concurrent blocks, each writing then snapshotting.
inline std::set<ViewAssignment> simulate_immediate(const IdSet& ids) {
  const std::vector<ProcessId> procs(ids.begin(), ids.end());
  std::set<ViewAssignment> out;
  const int n = static_cast<int>(procs.size());
  std::vector<int> label(procs.size(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      ViewAssignment views;
      for (int p = 0; p < n; ++p) {
        IdSet seen;
        for (int q = 0; q < n; ++q) {
          if (label[static_cast<std::size_t>(q)] <= label[static_cast<std::size_t>(p)]) seen.insert(procs[static_cast<std::size_t>(q)]);
        }
        views[procs[static_cast<std::size_t>(p)]] = seen;
      }
      out.insert(views);
      return;
    }
    for (int b = 0; b < n; ++b) {
      label[static_cast<std::size_t>(i)] = b;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Exhaustive search over chromatic assignments of protocol vertices to
// output vertices. A partial assignment is abandoned only once a fully
// assigned carrier facet violates Delta, so every total assignment is
// accounted for.
inline bool brute_force_solvable(const speedup::Task& task, const speedup::ModelSpec& model, int t) {
  using namespace speedup;
  const auto carriers = protocol_carriers(task.inputs, model, t);
  std::set<Vertex> vertex_set;
  for (const auto& [sigma, carrier] : carriers) {
    for (const auto& rho : carrier.facets()) vertex_set.insert(rho.vertices().begin(), rho.vertices().end());
  }
  const std::vector<Vertex> vars(vertex_set.begin(), vertex_set.end());
  std::map<Vertex, std::size_t> index;
  for (std::size_t k = 0; k < vars.size(); ++k) index[vars[k]] = k;

  // Facet constraints become due when their last variable is assigned.
  struct Due {
    std::vector<std::size_t> scope;
    const std::vector<Simplex>* legal;
  };
  std::vector<std::vector<Due>> due(vars.size());
  for (const auto& [sigma, carrier] : carriers) {
    for (const auto& rho : carrier.facets()) {
      Due d{{}, &task.legal(sigma)};
      for (const auto& v : rho.vertices()) d.scope.push_back(index.at(v));
      const std::size_t last = *std::max_element(d.scope.begin(), d.scope.end());
      due[last].push_back(std::move(d));
    }
  }
  std::map<ProcessId, std::vector<Vertex>> domain;
  for (const auto& v : task.outputs.vertices()) domain[v.id].push_back(v);

  std::vector<const Vertex*> pick(vars.size(), nullptr);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) {
    if (k == vars.size()) return true;
    for (const auto& candidate : domain[vars[k].id]) {
      pick[k] = &candidate;
      bool ok = true;
      for (const auto& d : due[k]) {
        std::vector<Vertex> image;
        for (auto s : d.scope) image.push_back(*pick[s]);
        const Simplex out(std::move(image));
        if (!std::binary_search(d.legal->begin(), d.legal->end(), out)) {
          ok = false;
          break;
        }
      }
      if (ok && rec(k + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace oracle
