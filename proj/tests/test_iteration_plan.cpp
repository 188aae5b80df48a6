#include <doctest.h>

#include "helpers.hpp"
#include "nfold/iteration_plan.hpp"

using namespace nfold;
using nfold::testing::make_instance;

TEST_CASE("support bound constants") {
  CHECK(support_bound(1, 1, Mode::feasibility) == 12);
  CHECK(support_bound(1, 2, Mode::feasibility) == 16);
  CHECK(support_bound(1, 1, Mode::optimization) == 27);
  // zero delta is treated as one
  CHECK(support_bound(1, 0, Mode::feasibility) == 12);
  // r = 0: floor(2 log2 4) = 4
  CHECK(support_bound(0, 1, Mode::feasibility) == 4);
}

TEST_CASE("box radius") {
  CHECK(box_radius(2, 12, 1) == 24);
  CHECK(box_radius(1, 0, 5) == 0);
  CHECK(box_radius(3, 12, 2) == 72);
  CHECK_THROWS_AS(box_radius(Int{1} << 40, Int{1} << 20, Int{1} << 10), InstanceError);
}

TEST_CASE("schedule for b_low = 100, K = 12") {
  const auto s = lower_rhs_schedule(100, 12);
  CHECK(s.nonzero_iterations == 4);
  CHECK(s.m == std::vector<Int>{2, 16, 44, 100});
  CHECK(s.tilm == std::vector<Int>{2, 12, 12, 12});
  CHECK(s.hatm == std::vector<Int>{0, 4, 32, 88});
  CHECK(s.z[1] == 0);
  CHECK(s.z[2] == 0);
  CHECK(s.z[3] == 0);
}

TEST_CASE("schedule with a parity mismatch") {
  const auto s = lower_rhs_schedule(15, 12);
  CHECK(s.nonzero_iterations == 2);
  CHECK(s.m == std::vector<Int>{2, 15});
  CHECK(s.tilm == std::vector<Int>{2, 11});
  CHECK(s.hatm == std::vector<Int>{0, 4});
  CHECK(s.z[1] == 1);
}

TEST_CASE("small b_low is a single step") {
  const auto s = lower_rhs_schedule(5, 12);
  CHECK(s.nonzero_iterations == 1);
  CHECK(s.m == std::vector<Int>{5});
  CHECK(s.tilm == std::vector<Int>{5});
  CHECK(s.hatm == std::vector<Int>{0});
}

TEST_CASE("closed form examples") {
  CHECK(closed_form_m(100, 12, 4, 2) == 16);
  CHECK(closed_form_m(100, 12, 4, 4) == 100);
  CHECK(closed_form_m(100, 12, 4, 1) == 2);
  CHECK(closed_form_m(15, 12, 2, 1) == 2);
}

TEST_CASE("iteration count examples") {
  CHECK(iteration_count(100, 12) == 4);
  CHECK(iteration_count(88, 12) == 4);
  CHECK(iteration_count(5, 12) == 1);
  CHECK(iteration_count(0, 12) == 1);
  CHECK(iteration_count(37, 12) == 3);  // 3K + 1
}

TEST_CASE("closed form and count agree with the recurrence") {
  for (Int support = 5; support <= 40; ++support) {
    for (Int b = 0; b <= 5000; ++b) {
      const int count = iteration_count(b, support);
      const auto s = lower_rhs_schedule(b, support, count + 2);
      int nonzero = 0;
      for (int i = 1; i <= count + 2; ++i) {
        const auto u = static_cast<std::size_t>(i - 1);
        REQUIRE(closed_form_m(b, support, count + 2, i) == s.m[u]);
        REQUIRE(s.hatm[u] % 2 == 0);
        REQUIRE(s.tilm[u] <= support);
        REQUIRE(s.tilm[u] + s.hatm[u] == s.m[u]);
        if (i > 1) REQUIRE(s.m[u - 1] * 2 == s.hatm[u]);
        if (s.m[u] > 0) ++nonzero;
      }
      REQUIRE(nonzero == (b == 0 ? 0 : count));
    }
  }
}

TEST_CASE("plan anchors short blocks at the late iterations") {
  const auto vi = validate(make_instance(1, {{{1}}, {{1}}}, {105}, {100, 5}));
  const auto plan = build_plan(vi, Mode::feasibility);
  CHECK(plan.support == 12);
  CHECK(plan.radius == 24);
  CHECK(plan.iterations == 4);
  CHECK(plan.blocks[1].m == std::vector<Int>{0, 0, 0, 5});
  CHECK(plan.blocks[1].tilm == std::vector<Int>{0, 0, 0, 5});
  CHECK(plan.small_rhs(4) == std::vector<Int>{12, 5});
  CHECK(plan.lower_rhs(1) == std::vector<Int>{2, 0});
}

TEST_CASE("zero demand plan") {
  const auto vi = validate(make_instance(1, {{{1}}}, {0}, {0}));
  const auto plan = build_plan(vi, Mode::feasibility);
  CHECK(plan.iterations == 1);
  CHECK(plan.blocks[0].m == std::vector<Int>{0});
}

TEST_CASE("plan json carries the schedule") {
  const auto vi = validate(make_instance(1, {{{1}}}, {100}, {100}));
  const auto doc = plan_to_json(build_plan(vi, Mode::feasibility));
  CHECK(doc["I"] == 4);
  CHECK(doc["blocks"][0]["m"] == std::vector<Int>{2, 16, 44, 100});
}
