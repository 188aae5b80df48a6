#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/generators.hpp"
#include "nfold/oracle.hpp"
#include "nfold/reduction.hpp"

using namespace nfold;
using nfold::testing::make_instance;

TEST_CASE("shift example") {
  const auto vi = validate(make_instance(1, {{{-1, 2}}}, {0}, {3}));
  const auto red = reduce(vi);
  CHECK(red.shift == 2);
  CHECK(red.inst->blocks[0].at(0, 0) == 1);
  CHECK(red.inst->blocks[0].at(0, 1) == 4);
  CHECK(red.inst->b_up == std::vector<Int>{6});
  const std::vector<Int> x{2, 1};
  CHECK(verify_solution(vi, x));
  CHECK(verify_solution(red.inst, x));
}

TEST_CASE("zero lower rhs keeps b_up") {
  const auto vi = validate(make_instance(1, {{{-1, 2}}}, {5}, {0}));
  CHECK(reduce(vi).inst->b_up == std::vector<Int>{5});
}

TEST_CASE("map_back is the identity on x") {
  const auto vi = validate(make_instance(1, {{{-1, 2}}}, {0}, {3}, std::vector<Int>{1, 4}));
  const auto s = map_back(vi, Solution{{2, 1}, std::nullopt});
  CHECK(s.x == std::vector<Int>{2, 1});
  CHECK(s.objective == 6);
}

TEST_CASE("reduction preserves feasibility on random signed instances") {
  std::mt19937_64 rng(3);
  RandomInstanceParams params;
  params.min_entry = -3;
  params.max_entry = 3;
  params.max_b_low = 6;
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_instance(rng, params);
    const auto vi = validate(inst);
    const auto red = reduce(vi);
    Int lo = 0, hi = 0;
    for (const Block& b : red.inst->blocks) {
      lo = std::min(lo, b.min_entry());
      hi = std::max(hi, b.max_abs());
    }
    CHECK(lo >= 0);
    CHECK(hi <= 2 * vi.delta());
    const auto a = oracle_solve(inst, Mode::feasibility);
    const auto b = oracle_solve(red.inst.get(), Mode::feasibility);
    REQUIRE((a.status == SolveStatus::infeasible) == (b.status == SolveStatus::infeasible));
    if (a.solution) CHECK(verify_solution(red.inst, a.solution->x));
    if (b.solution) CHECK(verify_solution(vi, b.solution->x));
  }
}
