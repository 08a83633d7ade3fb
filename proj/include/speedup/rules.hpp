#pragma once

#include "speedup/solver.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace speedup {

/// What a process knows when it decides at the end of a round: the values
/// (previous-round decisions) of the processes it read and its box output.
struct RoundInput {
  ProcessId self;
  std::optional<int> box;
  std::map<ProcessId, Value> values;

  Value own() const { return values.at(self); }
};

struct DecisionRule {
  std::string name;
  std::function<Value(const RoundInput&)> decide;
};

/// Two-process rule that shrinks a spread of 3*eps to eps in one round.
/// A solo process keeps its value; with both values lo <= hi visible, the
/// process holding hi outputs z = min(hi, lo + eps) and the other outputs
/// min(hi, z + eps). Ties are harmless since then z = hi.
DecisionRule two_proc_approx_rule(Value eps);

/// Outputs of the two-process rule in the order (solo-1, 2-sees-both,
/// 1-sees-both, solo-2) for y1 <= y2.
std::array<Value, 4> two_proc_outputs(Value eps, Value y1, Value y2);

/// min(max of seen values, min of seen values + eps). Ignores the box.
DecisionRule halving_rule(Value eps);

/// Two-process consensus with test&set: the winner keeps its input, the
/// loser adopts the other's. Throws MissingPeerValueError when a loser did
/// not read its peer.
DecisionRule ts_consensus_rule();

/// halving_rule for rounds 1..t, round r using eps * 2^(t-r).
std::vector<DecisionRule> halving_schedule(Value eps, int t);
/// two_proc_approx_rule for rounds 1..t, round r using eps * 3^(t-r).
std::vector<DecisionRule> two_proc_schedule(Value eps, int t);

/// The map on P^(t) induced by composing one rule per round, each round's
/// decisions feeding the next. t = rules.size().
SimplicialMap materialize_rules(const Task& task, const ModelSpec& model,
                                const std::vector<DecisionRule>& rules);

/// verify_map on the materialized rules; t = rules.size().
bool run_rule(const Task& task, const ModelSpec& model, const std::vector<DecisionRule>& rules);

/// Rule schedule by CLI name ("halving", "two-proc", "ts-consensus"). For
/// the approximate-agreement rules eps comes from the task family.
std::vector<DecisionRule> named_rules(const std::string& name, const Task& task, int t);

}  // namespace speedup
