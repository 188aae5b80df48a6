#include <doctest.h>

#include <random>

#include "sched_brute.hpp"
#include "nfold/scheduling.hpp"

using namespace nfold;
using nfold::testing::brute_schedule_value;

namespace {

void check_schedule(const SchedulingInstance& inst, const Schedule& s, SchedObjective objective) {
  REQUIRE(s.job_machine.size() == job_sizes(inst).size());
  CHECK(schedule_objective(inst, s.job_machine, objective) == s.objective);
}

}  // namespace

TEST_CASE("two machines, jobs {3,3,2,2}") {
  const SchedulingInstance inst{{3, 2}, {2, 2}, {1}, {2}};
  const auto cmax = solve_cmax(inst);
  const auto cmin = solve_cmin(inst);
  CHECK(cmax.objective == Ratio::make(5, 1));
  CHECK(cmin.objective == Ratio::make(5, 1));
  check_schedule(inst, cmax, SchedObjective::cmax);
  check_schedule(inst, cmin, SchedObjective::cmin);
}

TEST_CASE("mixed speeds") {
  const SchedulingInstance inst{{3, 2}, {2, 1}, {1, 2}, {1, 1}};
  const auto cmax = solve_cmax(inst);
  CHECK(cmax.objective == Ratio::make(3, 1));
  CHECK(cmax.objective == brute_schedule_value(inst, SchedObjective::cmax));
}

TEST_CASE("single machine takes everything") {
  const SchedulingInstance inst{{3, 2}, {2, 2}, {3}, {1}};
  CHECK(solve_cmax(inst).objective == Ratio::make(10, 3));
  CHECK(solve_cmin(inst).objective == Ratio::make(10, 3));
}

TEST_CASE("decide_guess around the optimum") {
  const SchedulingInstance inst{{3, 2}, {2, 2}, {1}, {2}};
  CHECK(decide_guess(inst, Ratio::make(5, 1), SchedObjective::cmin).has_value());
  CHECK_FALSE(decide_guess(inst, Ratio::make(6, 1), SchedObjective::cmin).has_value());
  // total 10 cannot cover 2 * 6
  CHECK_FALSE(decide_guess(inst, Ratio::make(11, 2), SchedObjective::cmin).has_value());
}

TEST_CASE("fewer jobs than machines gives Cmin zero") {
  const SchedulingInstance inst{{4}, {1}, {1}, {3}};
  const auto s = solve_cmin(inst);
  CHECK(s.objective == Ratio::make(0, 1));
}

TEST_CASE("candidates are sorted and unique") {
  const SchedulingInstance inst{{2}, {2}, {1, 2}, {1, 1}};
  const auto c = candidate_guesses(inst);
  CHECK(c.front() == Ratio::make(0, 1));
  CHECK(c.back() == Ratio::make(4, 1));
  CHECK(std::is_sorted(c.begin(), c.end()));
}

TEST_CASE("big-machine path on a forced fixture") {
  const SchedulingInstance inst{{1, 2}, {10, 2}, {1}, {2}};
  SchedulingOptions opts;
  opts.small_threshold = 0;
  const auto cmin = solve_cmin(inst, opts);
  CHECK(cmin.objective == Ratio::make(7, 1));
  CHECK(cmin.path == "pivot a=1");
  check_schedule(inst, cmin, SchedObjective::cmin);
  const auto cmax = solve_cmax(inst, opts);
  CHECK(cmax.objective == Ratio::make(7, 1));
  CHECK(cmax.path.rfind("pivot", 0) == 0);
}

TEST_CASE("duplicate processing times are merged") {
  const SchedulingInstance inst{{2, 3, 2}, {1, 2, 1}, {1}, {2}};
  CHECK(solve_cmax(inst).objective == Ratio::make(5, 1));
  CHECK(solve_cmin(inst).objective == Ratio::make(5, 1));
}

TEST_CASE("random instances match exhaustive search") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    SchedulingInstance inst;
    const int d = 1 + static_cast<int>(rng() % 3);
    Int left = 1 + static_cast<Int>(rng() % 8);
    for (int j = 0; j < d && left > 0; ++j) {
      inst.p.push_back(1 + static_cast<Int>(rng() % 7));
      const Int cnt = j + 1 == d ? left : static_cast<Int>(rng() % (left + 1));
      inst.n.push_back(cnt);
      left -= cnt;
    }
    const int tau = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < tau; ++k) {
      inst.s.push_back(1 + static_cast<Int>(rng() % 3));
      inst.m.push_back(1 + static_cast<Int>(rng() % 2));
    }
    for (auto objective : {SchedObjective::cmax, SchedObjective::cmin}) {
      const auto s = solve_schedule(inst, objective);
      CHECK(s.objective == brute_schedule_value(inst, objective));
      check_schedule(inst, s, objective);
    }
  }
}

TEST_CASE("Cmin loads stay within the rebalanced band") {
  const SchedulingInstance inst{{1, 5}, {6, 3}, {1, 2}, {1, 1}};
  const auto s = solve_cmin(inst);
  const auto speeds = machine_speeds(inst);
  for (std::size_t k = 0; k < speeds.size(); ++k) {
    const Wide lhs = static_cast<Wide>(s.loads[k]) * s.objective.den;
    CHECK(lhs >= static_cast<Wide>(s.objective.num) * speeds[k]);
    CHECK(lhs <= static_cast<Wide>(s.objective.num) * speeds[k] + 5 * static_cast<Wide>(s.objective.den));
  }
}
