#pragma once

// Exhaustive reference solver. Shares nothing with the doubling engine: it
// enumerates every brick with the required coordinate sum and combines bricks
// through a map of reachable partial sums.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "nfold/core.hpp"

namespace nfold {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts enumerated brick vectors and combined pairs.
struct OracleBudget {
  std::uint64_t limit = 10'000'000;
  std::uint64_t used = 0;
  bool exceeded = false;

  void charge(std::uint64_t amount);
};

/// Works on the original (possibly signed) instance. Negative b_low is
/// reported as infeasible. Optimization requires c.
SolveOutcome oracle_solve(const NFoldInstance& inst, Mode mode, OracleBudget* budget = nullptr);

/// Every point sum_k A_k x_k with 1^T x_k = small_rhs[k], kept when all
/// coordinates are <= cap.
std::set<std::vector<Int>> oracle_point_set(std::span<const Block> blocks, std::span<const Int> small_rhs, Int cap,
                                            OracleBudget* budget = nullptr);

/// Same set with the best objective per point; costs[k] is block k's slice.
std::map<std::vector<Int>, Int> oracle_point_values(std::span<const Block> blocks, std::span<const Int> small_rhs,
                                                    std::span<const std::vector<Int>> costs, Int cap, OracleBudget* budget = nullptr);

}  // namespace nfold
