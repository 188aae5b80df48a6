#pragma once

// Lower right-hand-side schedule for the doubling solver.
//
// Iterations are numbered 1..I, iteration I being the full problem. In every
// iteration the lower RHS m^(i) of a block splits into a small part tilm^(i)
// (at most K) and an even part hatm^(i) that is halved for iteration i-1.
// Vectors below are indexed by i-1.

#include <vector>

#include <json.hpp>

#include "nfold/core.hpp"

namespace nfold {

/// Support bound K. Feasibility: floor(2(r+1) log2(4(r+1) max(delta,1))).
/// Optimization: floor(2(r+2)(log2(r+2) + delta + 2)). Exact integer arithmetic.
Int support_bound(int r, Int delta, Mode mode);

/// D = n * K * delta. Throws InstanceError(overflow) past 64 bits.
Int box_radius(Int n, Int support, Int delta);

struct BlockSchedule {
  std::vector<Int> m;
  std::vector<Int> tilm;
  std::vector<Int> hatm;
  std::vector<int> z;
  int nonzero_iterations = 1;  // I_k

  int length() const { return static_cast<int>(m.size()); }
};

/// Runs the halving recurrence for a single block, producing exactly I_k
/// iterations (the block on its own).
BlockSchedule lower_rhs_schedule(Int b_low, Int support);

/// Same recurrence anchored at a global iteration count; iterations before the
/// block's first non-zero step are all zero.
BlockSchedule lower_rhs_schedule(Int b_low, Int support, int total_iterations);

/// Closed form of m^(i) for a block with lower RHS b_low, 1 <= i <= I.
Int closed_form_m(Int b_low, Int support, int total_iterations, int i);

/// Number of non-zero iterations I_k (1 for b_low <= K, including b_low = 0).
int iteration_count(Int b_low, Int support);

struct IterationPlan {
  Mode mode = Mode::feasibility;
  Int support = 0;  // K
  Int radius = 0;   // D
  Int delta = 0;
  int iterations = 1;  // I
  std::vector<int> block_iterations;
  std::vector<BlockSchedule> blocks;

  /// tilm^(i) across all blocks, 1 <= i <= I.
  std::vector<Int> small_rhs(int i) const;
  std::vector<Int> lower_rhs(int i) const;
};

IterationPlan build_plan(const ValidatedInstance& inst, Mode mode);

nlohmann::json plan_to_json(const IterationPlan& plan);

}  // namespace nfold
