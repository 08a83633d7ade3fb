#pragma once

#include "speedup/solver.hpp"

#include <functional>
#include <map>
#include <optional>

namespace speedup {

/// The local task for sigma and tau: its input complex is tau with all of
/// its faces, its output complex is Delta(sigma). A vertex of tau must be
/// output unchanged when running solo; larger faces may output anything in
/// Delta(sigma) carrying their ids.
struct LocalTask {
  Simplex sigma;
  Simplex tau;
  ChromaticComplex target;
  Task task;
};

/// Throws IdMismatchError if ids(tau) != ids(sigma) and NotInTargetError if a
/// vertex of tau does not occur in Delta(sigma).
LocalTask local_task(const Task& task, const Simplex& sigma, const Simplex& tau);

struct ClosureOptions {
  /// Worker threads for the independent (sigma, tau) solves.
  int threads = 1;
  SolveOptions solve;
};

/// Closure of `task` with respect to `model`: tau is legal for sigma iff the
/// local task for (sigma, tau) is solvable in at most one round. For a
/// binary-consensus box the proposal of each process is existentially
/// quantified (any fixed bit per process).
Task closure(const Task& task, const ModelSpec& model, const ClosureOptions& options = {});

/// Closure in immediate snapshot plus binary consensus where process i
/// always proposes beta[i]. `beta` must cover every process of the task.
Task closure_beta(const Task& task, const std::map<ProcessId, int>& beta,
                  const ClosureOptions& options = {});

bool is_fixed_point(const Task& task, const ModelSpec& model, const ClosureOptions& options = {});

/// Given f solving `task` in t >= 1 rounds, the (t-1)-round map that sends a
/// view to f's decision on the solo extension of that view. Throws
/// NotASolutionError when f does not solve the task.
SimplicialMap speedup_transform(const Task& task, const ModelSpec& model, int t,
                                const SimplicialMap& f);

using TaskTransform = std::function<Task(const Task&)>;
/// Returns true when the chain should stop (the task became easy).
using HaltPredicate = std::function<bool(const Task&)>;

struct ChainResult {
  /// Number of leading iterates T^0, T^1, ... that did not halt. This many
  /// rounds are necessary to solve the original task.
  int bound = 0;
  /// True when max_steps iterates were examined without halting.
  bool budget_exhausted = false;
  /// Whether a closed-form family replaced closure for later steps.
  bool used_closed_form = false;
};

ChainResult lower_bound_chain(const Task& task, const TaskTransform& transform,
                              const HaltPredicate& halt, int max_steps);

struct LowerBoundOptions {
  /// Re-parameterization tried as a shortcut for closure. Used for steps
  /// after the first only if it matched the computed closure at step one.
  std::optional<TaskTransform> closed_form;
  bool force_full = false;
  ClosureOptions closure;
};

/// Chain with closure(., model) as the transform and zero-round solvability
/// in `model` as the halting test.
ChainResult lower_bound_chain(const Task& task, const ModelSpec& model, int max_steps,
                              const LowerBoundOptions& options = {});

/// True iff `task` is solvable without communication.
bool zero_round_solvable(const Task& task, const ModelSpec& model);

/// Family re-parameterization eps_num -> factor * eps_num for approx tasks.
TaskTransform scale_epsilon(int factor);

}  // namespace speedup
