#pragma once

// Seeded agreement runs of the doubling solver against the exhaustive
// oracle. Reports contain no timing so equal seeds give equal documents.

#include <cstdint>
#include <functional>

#include <json.hpp>

#include "nfold/core.hpp"

namespace nfold {

/// Runs body(0..count-1) on up to `threads` workers. The first exception is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

struct CheckConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  Mode mode = Mode::feasibility;
  unsigned threads = 1;
  std::uint64_t budget = 10'000'000;
};

/// Feasibility draws mixed instances; optimization draws feasible instances
/// with costs in [0, 5]. Trials whose oracle run exceeds the budget are
/// reported as skipped.
nlohmann::json core_check_report(const CheckConfig& config);

}  // namespace nfold
