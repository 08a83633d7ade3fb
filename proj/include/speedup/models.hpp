#pragma once

#include "speedup/complex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace speedup {

enum class Communication { Collect, Snapshot, ImmediateSnapshot };
enum class BlackBox { None, TestAndSet, BinaryConsensus };

/// Round-based shared-memory model, optionally augmented with a black box
/// invoked between the write and the read of every round.
struct ModelSpec {
  Communication communication = Communication::ImmediateSnapshot;
  BlackBox blackbox = BlackBox::None;
  /// Binary-consensus inputs per process and round. Round key 0 applies to
  /// every round that has no explicit entry.
  std::map<ProcessId, std::map<int, int>> bc_inputs;

  static ModelSpec iis();
  static ModelSpec snapshot();
  static ModelSpec collect();
  static ModelSpec iis_test_and_set();
  /// Binary consensus where process i always proposes beta[i].
  static ModelSpec iis_binary_consensus(const std::map<ProcessId, int>& beta);

  /// Throws UnsupportedCombinationError for a box outside immediate snapshot.
  void validate() const;
  /// Box input of `id` at `round`; throws ModelError when undeclared.
  int bc_input(ProcessId id, int round) const;
  /// Short stable description, e.g. "iis+ts".
  std::string tag() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Which process read which registers in one round, in the two-row matrix
/// form: processes in blocks[s] read exactly reads[s].
struct ExecutionMatrix {
  std::vector<IdSet> reads;
  std::vector<IdSet> blocks;

  std::map<ProcessId, IdSet> views() const;
  friend bool operator==(const ExecutionMatrix&, const ExecutionMatrix&) = default;
  friend auto operator<=>(const ExecutionMatrix&, const ExecutionMatrix&) = default;
};

/// Immediate-snapshot schedule: blocks in schedule order; a process in block
/// j reads blocks 1..j.
struct OrderedPartition {
  std::vector<IdSet> blocks;

  std::map<ProcessId, IdSet> views() const;
  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
  friend auto operator<=>(const OrderedPartition&, const OrderedPartition&) = default;
};

using ViewAssignment = std::map<ProcessId, IdSet>;

/// Black-box result of one execution: the test&set winner or the common
/// consensus decision.
struct BoxOutcome {
  std::optional<ProcessId> winner;
  std::optional<int> decided;

  std::optional<int> output_for(ProcessId id) const;
};

/// Every matrix over `participants` meeting the collect conditions.
std::vector<ExecutionMatrix> enumerate_collect_matrices(const IdSet& participants);
/// Matrices whose read sets form a chain under inclusion.
std::vector<ExecutionMatrix> filter_snapshot(const std::vector<ExecutionMatrix>& ms);
/// Matrices meeting the immediate-snapshot condition, as distinct schedules.
std::vector<OrderedPartition> filter_immediate(const std::vector<ExecutionMatrix>& ms);
/// All ordered set partitions of `participants`, in canonical order.
std::vector<OrderedPartition> ordered_partitions(const IdSet& participants);

/// Distinct view assignments a communication model allows (no black box).
std::vector<ViewAssignment> view_assignments(Communication comm, const IdSet& participants);

/// Box outcomes the adversary may produce for a schedule. The first block
/// acts on the box before anyone else, so it alone determines the outcome.
std::vector<BoxOutcome> box_outcomes(const ModelSpec& model, const OrderedPartition& schedule,
                                     int round);

/// One-round protocol complex of `sigma`. Vertex values of `sigma` are the
/// views (or inputs) written at the start of the round.
ChromaticComplex one_round(const Simplex& sigma, const ModelSpec& model, int round);

/// t-round protocol complex of every input facet, unioned. t = 0 is identity.
ChromaticComplex iterate(const ChromaticComplex& input, const ModelSpec& model, int t);

/// P^(t)(sigma) for one input simplex.
ChromaticComplex iterate_simplex(const Simplex& sigma, const ModelSpec& model, int t);

/// P^(t)(sigma) for every simplex sigma of `input` (faces included).
std::map<Simplex, ChromaticComplex> protocol_carriers(const ChromaticComplex& input,
                                                      const ModelSpec& model, int t);

/// Substitutes `to`'s values for `from`'s inside a one-round vertex,
/// preserving which processes were read and the box output.
Vertex canonical_iso(const Simplex& from, const Simplex& to, const Vertex& v);

}  // namespace speedup
