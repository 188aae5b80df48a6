#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/generators.hpp"
#include "nfold/instance_io.hpp"

using namespace nfold;
using nfold::testing::make_instance;

TEST_CASE("validate caches delta and h") {
  const auto vi = validate(make_instance(1, {{{1, 2}}}, {3}, {2}));
  CHECK(vi.delta() == 2);
  CHECK(vi.h() == 2);
  CHECK_FALSE(vi.has_negative_entries());
}

TEST_CASE("validate rejects negative local rhs") {
  try {
    validate(make_instance(1, {{{1}}}, {0}, {-1}));
    FAIL("expected an error");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceErrorKind::negative_local_rhs);
  }
}

TEST_CASE("validate rejects missing block") {
  auto inst = make_instance(1, {{{1}}}, {0}, {1, 1});
  inst.n = 2;
  inst.t = {1, 1};
  try {
    validate(inst);
    FAIL("expected an error");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceErrorKind::dimension_mismatch);
  }
}

TEST_CASE("validate rejects wrong objective length") {
  CHECK_THROWS_AS(validate(make_instance(1, {{{1, 2}}}, {3}, {2}, std::vector<Int>{1})), InstanceError);
}

TEST_CASE("verify_solution on hand examples") {
  const auto vi = validate(make_instance(1, {{{1, 2}}}, {3}, {2}));
  CHECK(verify_solution(vi, std::vector<Int>{1, 1}));
  CHECK_FALSE(verify_solution(vi, std::vector<Int>{2, 0}));
  CHECK_FALSE(verify_solution(vi, std::vector<Int>{3, -1}));
  CHECK_THROWS_AS(verify_solution(vi, std::vector<Int>{1}), InstanceError);

  const auto zero = validate(make_instance(2, {{{1, 0}, {2, 1}}}, {0, 0}, {0}));
  CHECK(verify_solution(zero, std::vector<Int>{0, 0}));
}

TEST_CASE("delta matches a direct scan") {
  std::mt19937_64 rng(11);
  RandomInstanceParams params;
  params.min_entry = -5;
  params.max_entry = 5;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(rng, params);
    Int expect = 0;
    for (const Block& b : inst.blocks)
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) expect = std::max<Int>(expect, b.at(i, j) < 0 ? -b.at(i, j) : b.at(i, j));
    CHECK(validate(inst).delta() == expect);
  }
}

TEST_CASE("instance format round trip") {
  std::mt19937_64 rng(5);
  RandomInstanceParams params;
  params.with_objective = true;
  for (int trial = 0; trial < 100; ++trial) {
    params.with_objective = trial % 2 == 0;
    const auto inst = random_instance(rng, params);
    const auto text = instance_to_json(inst).dump();
    CHECK(parse_instance(text) == inst);
  }
}

TEST_CASE("minimal document parses") {
  const auto inst = parse_instance(R"({"n":1,"r":1,"t":[2],"blocks":[[[1,2]]],"b_up":[3],"b_low":[2]})");
  CHECK(inst.n == 1);
  CHECK(inst.blocks[0].at(0, 1) == 2);
  CHECK_FALSE(inst.c.has_value());
}

TEST_CASE("missing b_low names the field") {
  try {
    parse_instance(R"({"n":1,"r":1,"t":[2],"blocks":[[[1,2]]],"b_up":[3]})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.field() == "b_low");
  }
}

TEST_CASE("malformed json reports a line") {
  try {
    parse_instance("{\n\"n\": 1,\n\"r\": ]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("result json omits timing on request") {
  SolveOutcome out;
  out.status = SolveStatus::feasible;
  out.solution = Solution{{1, 1}, std::nullopt};
  const auto doc = outcome_to_json(out, ResultFormat{false});
  CHECK(doc["status"] == "feasible");
  CHECK(doc["x"].size() == 2);
  CHECK_FALSE(doc["stats"].contains("wall_ms"));
}
