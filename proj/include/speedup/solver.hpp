#pragma once

#include "speedup/models.hpp"
#include "speedup/task.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace speedup {

/// Color-preserving vertex map from a protocol complex to an output complex.
struct SimplicialMap {
  std::map<Vertex, Vertex> assignment;

  /// Image of `v`; throws PartialMapError when unassigned.
  const Vertex& at(const Vertex& v) const;
  /// Image of a simplex; throws PartialMapError or NonChromaticError.
  Simplex image(const Simplex& s) const;
};

struct SolveVerdict {
  bool solvable = false;
  /// Present iff solvable.
  std::optional<SimplicialMap> witness;
  /// Search nodes visited (value trials, including the root).
  std::uint64_t explored = 0;
};

struct SolveOptions {
  /// Maximum number of search nodes; 0 means unbounded.
  std::uint64_t node_budget = 0;
};

/// Decides t-round solvability by searching for a decision map that agrees
/// with Delta on every input simplex. Complete: Unsolvable is only reported
/// after the search space is exhausted. Throws ResourceLimitError when the
/// node budget runs out.
SolveVerdict solve(const Task& task, const ModelSpec& model, int t, const SolveOptions& options = {});

/// Same as solve, with the carriers P^(t)(sigma) already built for every
/// input simplex.
SolveVerdict solve_on_carriers(const Task& task, const std::map<Simplex, ChromaticComplex>& carriers,
                               const SolveOptions& options = {});

/// Independent check that `f` is chromatic, simplicial and agrees with Delta
/// on every input simplex after t rounds. Throws PartialMapError if a
/// protocol vertex is unassigned.
bool verify_map(const Task& task, const ModelSpec& model, int t, const SimplicialMap& f);

}  // namespace speedup
