#pragma once

#include "nfold/core.hpp"

namespace nfold {

/// Instance with every block entry shifted by `shift` into [0, 2*shift].
/// Feasible sets coincide with the original: each feasible x uses exactly
/// ||b_low||_1 columns, so every global row gains exactly ||b_low||_1 * shift.
struct ReducedInstance {
  ValidatedInstance inst;
  Int shift = 0;
};

ReducedInstance reduce(const ValidatedInstance& inst);

/// Solutions carry over unchanged; the objective is recomputed against the
/// original c.
Solution map_back(const ValidatedInstance& original, const Solution& reduced_solution);

}  // namespace nfold
