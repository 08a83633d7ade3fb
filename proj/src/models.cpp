#include "speedup/models.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <set>

namespace speedup {

ModelSpec ModelSpec::iis() { return {}; }

ModelSpec ModelSpec::snapshot() {
  ModelSpec m;
  m.communication = Communication::Snapshot;
  return m;
}

ModelSpec ModelSpec::collect() {
  ModelSpec m;
  m.communication = Communication::Collect;
  return m;
}

ModelSpec ModelSpec::iis_test_and_set() {
  ModelSpec m;
  m.blackbox = BlackBox::TestAndSet;
  return m;
}

ModelSpec ModelSpec::iis_binary_consensus(const std::map<ProcessId, int>& beta) {
  ModelSpec m;
  m.blackbox = BlackBox::BinaryConsensus;
  for (const auto& [id, bit] : beta) m.bc_inputs[id][0] = bit;
  return m;
}

void ModelSpec::validate() const {
  if (blackbox != BlackBox::None && communication != Communication::ImmediateSnapshot) {
    throw UnsupportedCombinationError("black boxes are only supported with immediate snapshot");
  }
  for (const auto& [id, rounds] : bc_inputs) {
    for (const auto& [round, bit] : rounds) {
      if (bit != 0 && bit != 1) {
        throw ModelError("binary-consensus input of process " + std::to_string(id.value) +
                         " must be 0 or 1");
      }
      if (round < 0) throw ModelError("negative round in binary-consensus inputs");
    }
  }
}

int ModelSpec::bc_input(ProcessId id, int round) const {
  auto it = bc_inputs.find(id);
  if (it != bc_inputs.end()) {
    if (auto r = it->second.find(round); r != it->second.end()) return r->second;
    if (auto r = it->second.find(0); r != it->second.end()) return r->second;
  }
  throw ModelError("no binary-consensus input declared for process " +
                   std::to_string(id.value) + " at round " + std::to_string(round));
}

std::string ModelSpec::tag() const {
  std::string out;
  switch (communication) {
    case Communication::Collect: out = "collect"; break;
    case Communication::Snapshot: out = "snapshot"; break;
    case Communication::ImmediateSnapshot: out = "iis"; break;
  }
  switch (blackbox) {
    case BlackBox::None: break;
    case BlackBox::TestAndSet: out += "+ts"; break;
    case BlackBox::BinaryConsensus: out += "+bc"; break;
  }
  return out;
}

std::map<ProcessId, IdSet> ExecutionMatrix::views() const {
  std::map<ProcessId, IdSet> out;
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    for (auto p : blocks[s]) out[p] = reads[s];
  }
  return out;
}

std::map<ProcessId, IdSet> OrderedPartition::views() const {
  std::map<ProcessId, IdSet> out;
  IdSet prefix;
  for (const auto& block : blocks) {
    prefix.insert(block.begin(), block.end());
    for (auto p : block) out[p] = prefix;
  }
  return out;
}

std::optional<int> BoxOutcome::output_for(ProcessId id) const {
  if (winner) return *winner == id ? 1 : 0;
  return decided;
}

namespace {

std::vector<IdSet> subsets_of(const std::vector<ProcessId>& pool) {
  std::vector<IdSet> out;
  const std::size_t k = pool.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    IdSet s;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) s.insert(pool[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void partitions_rec(const IdSet& remaining, std::vector<IdSet>& prefix,
                    std::vector<OrderedPartition>& out) {
  if (remaining.empty()) {
    out.push_back({prefix});
    return;
  }
  const std::vector<ProcessId> pool(remaining.begin(), remaining.end());
  for (auto& block : subsets_of(pool)) {
    if (block.empty()) continue;
    IdSet rest;
    std::set_difference(remaining.begin(), remaining.end(), block.begin(), block.end(),
                        std::inserter(rest, rest.end()));
    prefix.push_back(std::move(block));
    partitions_rec(rest, prefix, out);
    prefix.pop_back();
  }
}

bool subset(const IdSet& a, const IdSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Value view_of(const Simplex& sigma, const IdSet& read, std::optional<int> box) {
  std::vector<Vertex> seen;
  seen.reserve(read.size());
  for (const auto& v : sigma.vertices()) {
    if (read.contains(v.id)) seen.push_back(v);
  }
  return Value::view(box, std::move(seen));
}

}  // namespace

std::vector<OrderedPartition> ordered_partitions(const IdSet& participants) {
  std::vector<OrderedPartition> out;
  if (participants.empty()) return out;
  std::vector<IdSet> prefix;
  partitions_rec(participants, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExecutionMatrix> enumerate_collect_matrices(const IdSet& participants) {
  std::vector<ExecutionMatrix> out;
  if (participants.empty()) return out;
  for (const auto& partition : ordered_partitions(participants)) {
    const auto& blocks = partition.blocks;
    const std::size_t r = blocks.size() - 1;
    // Every row s must read all processes in blocks s..r.
    std::vector<std::vector<IdSet>> choices(r + 1);
    choices[0] = {participants};
    for (std::size_t s = 1; s <= r; ++s) {
      IdSet forced;
      for (std::size_t j = s; j <= r; ++j) forced.insert(blocks[j].begin(), blocks[j].end());
      std::vector<ProcessId> optional_ids;
      std::set_difference(participants.begin(), participants.end(), forced.begin(),
                          forced.end(), std::back_inserter(optional_ids));
      for (auto extra : subsets_of(optional_ids)) {
        extra.insert(forced.begin(), forced.end());
        choices[s].push_back(std::move(extra));
      }
    }
    std::vector<std::size_t> pick(r + 1, 0);
    while (true) {
      ExecutionMatrix m;
      m.blocks = blocks;
      for (std::size_t s = 0; s <= r; ++s) m.reads.push_back(choices[s][pick[s]]);
      out.push_back(std::move(m));
      std::size_t s = 0;
      while (s <= r && ++pick[s] == choices[s].size()) pick[s++] = 0;
      if (s > r) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExecutionMatrix> filter_snapshot(const std::vector<ExecutionMatrix>& ms) {
  std::vector<ExecutionMatrix> out;
  for (const auto& m : ms) {
    bool chain = true;
    for (std::size_t i = 0; i < m.reads.size() && chain; ++i) {
      for (std::size_t j = i + 1; j < m.reads.size() && chain; ++j) {
        chain = subset(m.reads[i], m.reads[j]) || subset(m.reads[j], m.reads[i]);
      }
    }
    if (chain) out.push_back(m);
  }
  return out;
}

std::vector<OrderedPartition> filter_immediate(const std::vector<ExecutionMatrix>& ms) {
  std::set<OrderedPartition> out;
  for (const auto& m : ms) {
    std::map<ProcessId, std::size_t> row_of;
    for (std::size_t s = 0; s < m.blocks.size(); ++s) {
      for (auto p : m.blocks[s]) row_of[p] = s;
    }
    bool immediate = true;
    for (std::size_t i = 0; i < m.reads.size() && immediate; ++i) {
      for (auto q : m.reads[i]) {
        if (!subset(m.reads[row_of.at(q)], m.reads[i])) {
          immediate = false;
          break;
        }
      }
    }
    if (!immediate) continue;

    // Group processes by view; the smallest view is scheduled first.
    std::map<IdSet, IdSet> by_view;
    for (const auto& [p, view] : m.views()) by_view[view].insert(p);
    std::vector<std::pair<IdSet, IdSet>> groups(by_view.begin(), by_view.end());
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
    OrderedPartition schedule;
    for (auto& [view, members] : groups) schedule.blocks.push_back(members);
    out.insert(std::move(schedule));
  }
  return {out.begin(), out.end()};
}

std::vector<ViewAssignment> view_assignments(Communication comm, const IdSet& participants) {
  std::set<ViewAssignment> out;
  switch (comm) {
    case Communication::ImmediateSnapshot:
      for (const auto& p : ordered_partitions(participants)) out.insert(p.views());
      break;
    case Communication::Snapshot:
      for (const auto& m : filter_snapshot(enumerate_collect_matrices(participants))) {
        out.insert(m.views());
      }
      break;
    case Communication::Collect:
      for (const auto& m : enumerate_collect_matrices(participants)) out.insert(m.views());
      break;
  }
  return {out.begin(), out.end()};
}

std::vector<BoxOutcome> box_outcomes(const ModelSpec& model, const OrderedPartition& schedule,
                                     int round) {
  const IdSet& first = schedule.blocks.front();
  std::vector<BoxOutcome> out;
  switch (model.blackbox) {
    case BlackBox::None:
      out.push_back({});
      break;
    case BlackBox::TestAndSet:
      for (auto p : first) out.push_back({p, std::nullopt});
      break;
    case BlackBox::BinaryConsensus: {
      std::set<int> proposals;
      for (auto p : first) proposals.insert(model.bc_input(p, round));
      for (int d : proposals) out.push_back({std::nullopt, d});
      break;
    }
  }
  return out;
}

ChromaticComplex one_round(const Simplex& sigma, const ModelSpec& model, int round) {
  model.validate();
  const IdSet participants = sigma.ids();
  std::vector<Simplex> facets;

  if (model.communication == Communication::ImmediateSnapshot) {
    for (const auto& schedule : ordered_partitions(participants)) {
      const auto views = schedule.views();
      for (const auto& outcome : box_outcomes(model, schedule, round)) {
        std::vector<Vertex> facet;
        for (const auto& [p, read] : views) {
          facet.push_back({p, view_of(sigma, read, outcome.output_for(p))});
        }
        facets.emplace_back(std::move(facet));
      }
    }
  } else {
    for (const auto& views : view_assignments(model.communication, participants)) {
      std::vector<Vertex> facet;
      for (const auto& [p, read] : views) facet.push_back({p, view_of(sigma, read, std::nullopt)});
      facets.emplace_back(std::move(facet));
    }
  }
  return ChromaticComplex::from_facets(std::move(facets));
}

ChromaticComplex iterate_simplex(const Simplex& sigma, const ModelSpec& model, int t) {
  return iterate(ChromaticComplex::from_facets({sigma}), model, t);
}

ChromaticComplex iterate(const ChromaticComplex& input, const ModelSpec& model, int t) {
  if (t < 0) throw Error("round count must be non-negative");
  model.validate();
  ChromaticComplex current = input;
  for (int round = 1; round <= t; ++round) {
    std::vector<Simplex> next;
    for (const auto& facet : current.facets()) {
      const auto sub = one_round(facet, model, round);
      next.insert(next.end(), sub.facets().begin(), sub.facets().end());
    }
    current = ChromaticComplex::from_facets(std::move(next), input.n());
  }
  return current;
}

std::map<Simplex, ChromaticComplex> protocol_carriers(const ChromaticComplex& input,
                                                      const ModelSpec& model, int t) {
  std::map<Simplex, ChromaticComplex> out;
  for (const auto& sigma : input.simplices()) {
    out.emplace(sigma, iterate_simplex(sigma, model, t));
  }
  return out;
}

Vertex canonical_iso(const Simplex& from, const Simplex& to, const Vertex& v) {
  if (from.ids() != to.ids()) {
    throw IdMismatchError("canonical isomorphism needs simplices with equal id sets");
  }
  if (!v.value.is_view()) {
    throw IdMismatchError("vertex is not a one-round view");
  }
  std::vector<Vertex> seen;
  for (const auto& [j, x] : v.value.seen()) {
    if (from.value_of(j) != x) {
      throw IdMismatchError("vertex " + v.to_string() + " does not belong to P(from)");
    }
    seen.push_back({j, *to.value_of(j)});
  }
  return {v.id, Value::view(v.value.box(), std::move(seen))};
}

}  // namespace speedup
