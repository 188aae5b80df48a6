#pragma once

// Small-subproblem engine. For a small lower RHS tilm (every entry <= K) it
// computes the set of upper right-hand sides nu for which
//
//   A_k x_k = nu_k,  1^T x_k = tilm_k,  x_k >= 0   (all k),  nu = sum_k nu_k
//
// is feasible, by building one base table per block and folding the blocks
// together with Minkowski sums. In optimization mode every cell carries the
// best objective value and the fold is a (max,+) convolution.

#include <optional>
#include <span>
#include <vector>

#include "nfold/core.hpp"
#include "nfold/iteration_plan.hpp"
#include "nfold/point_table.hpp"

namespace nfold {

/// Inclusive per-axis bounds.
struct AxisBox {
  std::vector<Int> lo;
  std::vector<Int> hi;

  static AxisBox cube(int dim, Int lo, Int hi);
  bool contains(std::span<const Int> p) const;
  bool empty() const;
};

/// Points reachable by one block with exactly `items` columns chosen.
/// cells.origin(c).first indexes the stored selection vector of cell c.
struct BlockTable {
  int block = 0;
  int cols = 0;
  Int items = 0;
  PointTable cells;
  std::vector<Int> selections;

  std::span<const Int> selection(std::size_t cell) const {
    const auto row = static_cast<std::size_t>(cells.origin(cell).first);
    return {selections.data() + row * static_cast<std::size_t>(cols), static_cast<std::size_t>(cols)};
  }
};

/// Base table over the given box. `costs` is ignored in feasibility mode.
BlockTable block_base_table(const Block& block, Int items, Mode mode, std::span<const Int> costs, const AxisBox& box);

/// Base table over {0..K*delta}^r.
BlockTable block_base_table(const Block& block, Int items, Int support, Int delta, Mode mode, std::span<const Int> costs);

/// Minkowski sum clipped to `box`; values add, origins record (cell in a, cell in b).
PointTable convolve(const PointTable& a, const PointTable& b, const AxisBox& box);
PointTable convolve(const PointTable& a, const PointTable& b, Int cap);

struct BlockPointResult {
  Int value = 0;
  std::vector<Int> selection;
};

/// Answers single-point queries A x = target, 1^T x = items, x >= 0 for one
/// block without materializing its table. Optimization mode maximizes costs^T x.
class BlockPointSolver {
 public:
  BlockPointSolver(const Block& block, Int items, Mode mode, std::span<const Int> costs);

  std::optional<BlockPointResult> solve(std::span<const Int> target);
  std::optional<Int> best_value(std::span<const Int> target);

 private:
  std::optional<Int> best(int col, Int left, std::vector<Int>& rem);
  bool choice_range(int col, Int left, std::span<const Int> rem, Int& lo, Int& hi) const;

  const Block& block_;
  Int items_;
  Mode mode_;
  std::vector<Int> costs_;
  std::vector<Int> suffix_min_;  // (cols+1) x rows
  std::vector<Int> suffix_max_;
  PointTable memo_;
  std::vector<Int> key_;
};

/// The set of small upper RHS for one iteration, with everything needed to
/// expand any cell into per-block selections.
class SmallSubproblem {
 public:
  const PointTable& table() const { return folds_.back(); }
  const std::vector<int>& fold_order() const { return order_; }
  std::optional<int> lazy_block() const { return lazy_; }

  /// Full-length x~ for a cell (the lazy block, if any, stays zero).
  std::vector<Int> expand(std::size_t cell) const;

  std::uint64_t cells_built() const { return cells_built_; }

 private:
  friend SmallSubproblem build_small_subproblem(const ValidatedInstance&, std::span<const Int>, Mode, const AxisBox&, std::optional<int>);
  std::vector<int> order_;
  std::vector<BlockTable> bases_;
  std::vector<PointTable> folds_;
  std::vector<std::size_t> offsets_;
  std::size_t h_ = 0;
  std::optional<int> lazy_;
  std::uint64_t cells_built_ = 0;
};

/// Folds the base tables of all blocks (except `lazy_block`) keeping only
/// partial sums that can still land in `target` once the remaining blocks are
/// added. Requires non-negative blocks.
SmallSubproblem build_small_subproblem(const ValidatedInstance& inst, std::span<const Int> small_rhs, Mode mode, const AxisBox& target,
                                       std::optional<int> lazy_block = std::nullopt);

/// N~^(i): every small upper RHS in {0..D}^r for iteration i of the plan.
SmallSubproblem small_subproblem_set(const ValidatedInstance& inst, const IterationPlan& plan, int i, Mode mode);

}  // namespace nfold
