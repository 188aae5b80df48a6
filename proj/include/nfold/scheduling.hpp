#pragma once

// Uniform machine scheduling (Q||Cmax and Q||Cmin) through the configuration
// n-fold ILP. A guess T is decided by asking for an assignment that fills
// every machine exactly to its guessed load T_k once unit dummy jobs are
// added; the optimum is found by binary search over the candidate values K/s.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfold/core.hpp"

namespace nfold {

/// Non-negative rational kept in lowest terms.
struct Ratio {
  Int num = 0;
  Int den = 1;

  static Ratio make(Int num, Int den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<Wide>(a.num) * b.den < static_cast<Wide>(b.num) * a.den;
  }
};

enum class SchedObjective { cmax, cmin };

const char* to_string(SchedObjective objective);

/// Job types (p, n) and machine classes (s, m).
struct SchedulingInstance {
  std::vector<Int> p;
  std::vector<Int> n;
  std::vector<Int> s;
  std::vector<Int> m;
};

/// Throws std::invalid_argument on non-positive sizes/speeds, negative
/// counts, length mismatches or no machines.
void validate_scheduling(const SchedulingInstance& inst);

SchedulingInstance scheduling_from_json(const nlohmann::json& doc);

/// Jobs are numbered type by type in input order (n_j copies of type j),
/// machines class by class.
struct Schedule {
  std::vector<int> job_machine;
  std::vector<Int> loads;
  Ratio objective;
  Ratio guess;
  std::string path;  // "exact" or "pivot a=<size>"
  int probes = 0;
};

struct SchedulingOptions {
  /// Machines with guessed load above this are big. Default p_max^4.
  std::optional<Int> small_threshold;
};

std::vector<Int> job_sizes(const SchedulingInstance& inst);
std::vector<Int> machine_speeds(const SchedulingInstance& inst);

/// Objective of an assignment, recomputed from scratch.
Ratio schedule_objective(const SchedulingInstance& inst, const std::vector<int>& job_machine, SchedObjective objective);

/// Every value K/s with K in [0, N p_max] and s a machine speed, sorted.
std::vector<Ratio> candidate_guesses(const SchedulingInstance& inst);

/// Cmin: an assignment with load >= ceil(s_k T) on every machine.
/// Cmax: an assignment with load <= floor(s_k T) on every machine.
std::optional<Schedule> decide_guess(const SchedulingInstance& inst, Ratio guess, SchedObjective objective,
                                     const SchedulingOptions& options = {});

Schedule solve_cmax(const SchedulingInstance& inst, const SchedulingOptions& options = {});
Schedule solve_cmin(const SchedulingInstance& inst, const SchedulingOptions& options = {});
Schedule solve_schedule(const SchedulingInstance& inst, SchedObjective objective, const SchedulingOptions& options = {});

/// Moves single jobs off machines loaded above opt * s_k + p_max onto the
/// machine with the smallest completion time. Keeps the Cmin value.
void rebalance_cmin(const SchedulingInstance& inst, Schedule& schedule);

nlohmann::json schedule_to_json(const Schedule& schedule, SchedObjective objective);

}  // namespace nfold
