#pragma once

// Seeded random instances for tests, oracle-check and bench.

#include <random>

#include "nfold/core.hpp"

namespace nfold {

struct RandomInstanceParams {
  int max_n = 3;
  int min_r = 1;
  int max_r = 2;
  Int min_entry = -2;
  Int max_entry = 2;
  int max_t = 3;
  Int max_b_low = 30;
  bool with_objective = false;
  Int max_cost = 5;
  /// Probability that b_up is taken from a planted solution.
  double planted = 0.5;
};

/// b_up is either A x for a random x with the drawn brick sums, or that
/// vector perturbed by a small random offset.
NFoldInstance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params);

/// Always feasible: b_up comes from a planted solution.
NFoldInstance random_feasible_instance(std::mt19937_64& rng, RandomInstanceParams params);

}  // namespace nfold
