#pragma once

#include "speedup/complex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace speedup {

/// Parameters of a named task family, kept so tasks can be written back out
/// in their short JSON form and so decision rules can recover epsilon.
struct TaskFamily {
  std::string kind;  // consensus | weak_consensus | approx | liberal_approx
  int n = 0;
  int m = 0;
  int eps_num = 0;

  friend bool operator==(const TaskFamily&, const TaskFamily&) = default;
};

/// A task (I, O, Delta) with Delta stored extensionally on every simplex of I.
struct Task {
  ChromaticComplex inputs;
  ChromaticComplex outputs;
  /// Legal output simplices per input simplex, each list sorted canonically.
  std::map<Simplex, std::vector<Simplex>> delta;
  std::optional<TaskFamily> family;

  /// Delta(sigma); throws Error if sigma is not an input simplex.
  const std::vector<Simplex>& legal(const Simplex& sigma) const;
  int n() const noexcept { return inputs.n(); }
};

/// Checks the task invariants: Delta total on the input simplices, id
/// preservation, and every legal output inside the output complex.
/// Throws Error describing the first violation.
void validate_task(const Task& task);

/// Builds a task, sorting each Delta list and validating.
Task make_task(ChromaticComplex inputs, ChromaticComplex outputs,
               std::map<Simplex, std::vector<Simplex>> delta);

Task binary_consensus(int n);
/// Consensus where agreement is only required once three or more processes
/// participate; validity is kept everywhere.
Task weak_consensus(int n);
/// epsilon = eps_num / m on the grid {0, 1/m, ..., 1}. eps_num >= m makes the
/// pairwise bound vacuous.
Task approx_agreement(int n, int m, int eps_num);
/// As approx_agreement, but two participants only need to stay in range.
Task liberal_approx_agreement(int n, int m, int eps_num);

/// Builds a task from its family parameters.
Task task_from_family(const TaskFamily& family);

/// True iff Delta agrees on every input simplex. Throws InputMismatchError
/// when the input complexes differ.
bool tasks_equal(const Task& a, const Task& b);

/// First input simplex on which two tasks with equal inputs disagree.
std::optional<Simplex> first_difference(const Task& a, const Task& b);

}  // namespace speedup
