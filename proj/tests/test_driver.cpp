#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/driver.hpp"
#include "nfold/generators.hpp"
#include "nfold/instance_io.hpp"
#include "nfold/oracle.hpp"

using namespace nfold;
using nfold::testing::make_instance;

TEST_CASE("two-block example, feasibility") {
  const auto vi = validate(make_instance(1, {{{1, 2}}, {{0, 1}}}, {4}, {2, 1}));
  const auto out = solve(vi, Mode::feasibility);
  REQUIRE(out.status == SolveStatus::feasible);
  CHECK(verify_solution(vi, out.solution->x));
}

TEST_CASE("two-block example, optimization") {
  const auto vi = validate(make_instance(1, {{{1, 2}}, {{0, 1}}}, {4}, {2, 1}, std::vector<Int>{0, 1, 0, 1}));
  const auto out = solve(vi, Mode::optimization);
  REQUIRE(out.status == SolveStatus::optimal);
  CHECK(out.solution->objective == 2);
}

TEST_CASE("zero instance") {
  const auto vi = validate(make_instance(1, {{{1, 2}}}, {0}, {0}));
  const auto out = solve(vi, Mode::feasibility);
  REQUIRE(out.status == SolveStatus::feasible);
  CHECK(out.solution->x == std::vector<Int>{0, 0});
}

TEST_CASE("all-zero blocks short-circuit") {
  const auto yes = validate(make_instance(1, {{{0, 0}}}, {0}, {7}, std::vector<Int>{1, 3}));
  const auto out = solve(yes, Mode::optimization);
  REQUIRE(out.status == SolveStatus::optimal);
  CHECK(out.solution->objective == 21);
  const auto no = validate(make_instance(1, {{{0, 0}}}, {1}, {7}));
  CHECK(solve(no, Mode::feasibility).status == SolveStatus::infeasible);
}

TEST_CASE("long schedule with a zero column") {
  const auto vi = validate(make_instance(1, {{{0, 1}}}, {0}, {100}));
  const auto out = solve(vi, Mode::feasibility);
  REQUIRE(out.status == SolveStatus::feasible);
  CHECK(out.stats.iterations == 4);
  CHECK(out.solution->x == std::vector<Int>{100, 0});
}

TEST_CASE("doubling over several levels") {
  // b_low far above K forces I > 1 for both blocks
  const auto vi = validate(make_instance(1, {{{1, 2}}, {{0, 3}}}, {500}, {200, 90}, std::vector<Int>{2, 1, 1, 4}));
  const auto inst = vi.get();
  SolveTrace trace;
  const auto feas = solve(vi, Mode::feasibility, SolveOptions{&trace});
  REQUIRE(feas.status == SolveStatus::feasible);
  CHECK(trace.iterations > 2);
  const auto opt = solve(vi, Mode::optimization);
  REQUIRE(opt.status == SolveStatus::optimal);
  // x1 + 2 x2 + 3 x4 = 500, x1 + x2 = 200, x3 + x4 = 90, maximize 2x1 + x2 + x3 + 4x4
  Int best = -1;
  for (Int x2 = 0; x2 <= 200; ++x2)
    for (Int x4 = 0; x4 <= 90; ++x4)
      if ((200 - x2) + 2 * x2 + 3 * x4 == 500) best = std::max(best, 2 * (200 - x2) + x2 + (90 - x4) + 4 * x4);
  CHECK(opt.solution->objective == best);
}

TEST_CASE("objective errors") {
  const auto no_c = validate(make_instance(1, {{{1}}}, {1}, {1}));
  CHECK_THROWS_AS(solve(no_c, Mode::optimization), InstanceError);
  const auto neg = validate(make_instance(1, {{{1}}}, {1}, {1}, std::vector<Int>{-1}));
  try {
    solve(neg, Mode::optimization);
    FAIL("expected an error");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceErrorKind::negative_objective);
  }
}

TEST_CASE("signed instance goes through the reduction") {
  const auto vi = validate(make_instance(1, {{{-1, 2}}}, {0}, {3}));
  const auto out = solve(vi, Mode::feasibility);
  REQUIRE(out.status == SolveStatus::feasible);
  CHECK(out.stats.reduced);
  CHECK(out.solution->x == std::vector<Int>{2, 1});
}

TEST_CASE("driver agrees with the oracle on random instances") {
  std::mt19937_64 rng(1234);
  RandomInstanceParams params;
  params.max_b_low = 20;
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = random_instance(rng, params);
    const auto vi = validate(inst);
    const auto got = solve(vi, Mode::feasibility);
    const auto want = oracle_solve(inst, Mode::feasibility);
    REQUIRE(got.status == want.status);
    if (got.solution) CHECK(verify_solution(vi, got.solution->x));
  }
}

TEST_CASE("optimization agrees with the oracle") {
  std::mt19937_64 rng(77);
  RandomInstanceParams params;
  params.max_b_low = 20;
  params.with_objective = true;
  for (int trial = 0; trial < 80; ++trial) {
    const auto inst = random_feasible_instance(rng, params);
    const auto vi = validate(inst);
    const auto got = solve(vi, Mode::optimization);
    const auto want = oracle_solve(inst, Mode::optimization);
    REQUIRE(want.status == SolveStatus::optimal);
    REQUIRE(got.status == SolveStatus::optimal);
    CHECK(got.solution->objective == want.solution->objective);
  }
}

TEST_CASE("lazy last block does not change the verdict or optimum") {
  std::mt19937_64 rng(8);
  RandomInstanceParams params;
  params.min_entry = 0;
  params.max_b_low = 12;
  params.with_objective = true;
  for (int trial = 0; trial < 80; ++trial) {
    const auto vi = validate(random_instance(rng, params));
    const auto a = solve(vi, Mode::optimization);
    const auto b = solve(vi, Mode::optimization, SolveOptions{nullptr, false});
    REQUIRE(a.status == b.status);
    if (a.solution) CHECK(a.solution->objective == b.solution->objective);
  }
}

TEST_CASE("retained level points pass the box test") {
  std::mt19937_64 rng(99);
  RandomInstanceParams params;
  params.min_r = 1;
  params.max_r = 1;
  params.min_entry = 0;
  params.max_b_low = 60;
  for (int trial = 0; trial < 40; ++trial) {
    const auto vi = validate(random_instance(rng, params));
    SolveTrace trace;
    solve(vi, Mode::feasibility, SolveOptions{&trace});
    for (const auto& level : trace.levels) {
      const Wide scale = static_cast<Wide>(1) << (trace.iterations - level.iteration);
      for (const auto& p : level.points)
        for (std::size_t j = 0; j < p.size(); ++j) {
          const Wide gap = static_cast<Wide>(trace.b_up[j]) - scale * p[j];
          CHECK((gap < 0 ? -gap : gap) <= static_cast<Wide>(trace.radius) * scale);
        }
    }
  }
}

TEST_CASE("parity reduction of a known solution") {
  const auto vi = validate(make_instance(1, {{{1, 2, 0}}}, {0}, {15}));
  const std::vector<Int> x{3, 5, 7};
  const std::vector<Int> small{11};
  const auto red = reduce_solution(vi, x, small);
  REQUIRE(red.has_value());
  Int sum = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    CHECK((x[j] - (*red)[j]) % 2 == 0);
    CHECK((*red)[j] <= x[j]);
    sum += (*red)[j];
  }
  CHECK(sum == 11);
  CHECK_FALSE(reduce_solution(vi, x, std::vector<Int>{2}).has_value());
}

TEST_CASE("identical inputs give identical results") {
  std::mt19937_64 rng(5);
  RandomInstanceParams params;
  params.with_objective = true;
  for (int trial = 0; trial < 20; ++trial) {
    const auto vi = validate(random_instance(rng, params));
    const auto a = outcome_to_json(solve(vi, Mode::optimization), ResultFormat{false}).dump();
    const auto b = outcome_to_json(solve(vi, Mode::optimization), ResultFormat{false}).dump();
    CHECK(a == b);
  }
}
