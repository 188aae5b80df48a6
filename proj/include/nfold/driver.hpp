#pragma once

// Doubling solver. Level i holds candidate upper RHS vectors for the
// residual problem with lower RHS m^(i); each level is built from the
// previous one as 2 * N^(i-1) + N~^(i) and filtered to the points that can
// still reach b_up. Iteration I is the full instance.

#include <optional>
#include <span>
#include <vector>

#include "nfold/core.hpp"
#include "nfold/iteration_plan.hpp"

namespace nfold {

struct LevelTrace {
  int iteration = 0;
  std::vector<std::vector<Int>> points;
};

/// Optional record of the run, for invariant checks in tests.
struct SolveTrace {
  bool reduced = false;
  int iterations = 0;
  Int radius = 0;
  std::vector<Int> b_up;  // of the instance actually solved
  std::vector<LevelTrace> levels;
};

struct SolveOptions {
  SolveTrace* trace = nullptr;
  /// At the last level with a single parent, answer one block by point
  /// queries instead of building its table.
  bool lazy_final_block = true;
};

/// Throws InstanceError(objective_missing / negative_objective) in
/// optimization mode when c is absent or has a negative entry.
SolveOutcome solve(const ValidatedInstance& inst, Mode mode, const SolveOptions& options = {});

/// Parity reduction used to justify the doubling step: for a solution x of a
/// level with lower RHS m, picks x~ <= x with brick sums tilm and x - x~ even.
/// Returns nullopt when no such x~ exists.
std::optional<std::vector<Int>> reduce_solution(const ValidatedInstance& inst, std::span<const Int> x, std::span<const Int> small_rhs);

}  // namespace nfold
