#include "doctest.h"

#include "groupmms/instance.hpp"
#include "groupmms/rational.hpp"
#include "test_support.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using namespace groupmms;

namespace {

Instance worked_example() {
  return parse_instance(R"({"m": 4, "groups": [[[6,3,2,2]], [[1,1,1,1]]]})");
}

}  // namespace

TEST_CASE("parse_instance reads the two-group example") {
  Instance inst = worked_example();
  CHECK(inst.good_count() == 4);
  CHECK(inst.group_count() == 2);
  CHECK(inst.group_size(0) == 1);
  CHECK(inst.group_size(1) == 1);
  CHECK(inst.agent_count() == 2);
  CHECK(inst.shape() == std::vector<std::size_t>{1, 1});
  CHECK(inst.utility({0, 0}, 0) == 6);
  CHECK(inst.utility({0, 0}, 3) == 2);
  CHECK(inst.utility({1, 0}, 2) == 1);
  CHECK(inst.total_utility({0, 0}) == 13);
  CHECK(inst.total_utility({1, 0}) == 4);
  CHECK(inst.agents() == std::vector<AgentId>{{0, 0}, {1, 0}});
}

TEST_CASE("parse_instance accepts string rationals and big integers") {
  Instance inst = parse_instance(
      R"({"m": 3, "groups": [[["1/2", "0.25", 1], ["36893488147419103232", 0, "3"]]]})");
  CHECK(inst.utility({0, 0}, 0) == Rational(1, 2));
  CHECK(inst.utility({0, 0}, 1) == Rational(1, 4));
  CHECK(inst.utility({0, 1}, 0) == Rational(mpz_class("36893488147419103232")));
  CHECK(inst.utility({0, 1}, 2) == 3);
}

TEST_CASE("parse_instance rejects malformed documents") {
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("[]"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"groups": [[[1]]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1, "groups": []})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1, "groups": [[]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 2, "groups": [[[1]]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1, "groups": [[[-1]]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1, "groups": [[["-1/2"]]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1, "groups": [[["x"]]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 1, "groups": [[[true]]]})"), ParseError);
}

TEST_CASE("parse_instance rejects float utilities with a hint") {
  try {
    parse_instance(R"({"m": 1, "groups": [[[0.1]]]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("as a string") != std::string::npos);
  }
}

TEST_CASE("instance JSON round-trips exactly") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Instance inst = test_support::random_instance(rng, {2, 3}, 5, t % 2 == 1);
    Instance back = parse_instance(instance_to_json(inst));
    CHECK(back == inst);
  }
  Instance big = parse_instance(
      R"({"m": 2, "groups": [[["73786976294838206464/3", "1/36893488147419103232"]]]})");
  CHECK(parse_instance(instance_to_json(big)) == big);
}

TEST_CASE("Instance constructor validates shape") {
  CHECK_THROWS_AS(Instance(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(1, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, {{{Rational(1)}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(1, {{{Rational(-1)}}}), std::invalid_argument);
}

TEST_CASE("bundle accessors and utilities") {
  Instance inst = worked_example();
  Allocation alloc{{0, 1, 1, 1}};
  validate_allocation(inst, alloc);
  CHECK(alloc.bundle(0) == std::vector<std::size_t>{0});
  CHECK(alloc.bundle(1) == std::vector<std::size_t>{1, 2, 3});
  CHECK(bundle_utility(inst, {0, 0}, alloc.bundle(1)) == 7);
  CHECK(bundle_utility(inst, {1, 0}, alloc.bundle(1)) == 3);
  CHECK(bundle_utility(inst, {0, 0}, {}) == 0);
  CHECK_THROWS_AS(bundle_utility(inst, {0, 0}, {4}), std::invalid_argument);
}

TEST_CASE("validate_allocation rejects bad assignments") {
  Instance inst = worked_example();
  CHECK_THROWS_AS(validate_allocation(inst, Allocation{{0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_allocation(inst, Allocation{{0, 1, 1, 2}}), std::invalid_argument);
}

TEST_CASE("ratio_report computes per-agent ratios and their minimum") {
  Instance inst = worked_example();
  Allocation alloc{{0, 1, 1, 1}};
  std::vector<std::vector<Rational>> shares = {{Rational(6)}, {Rational(2)}};
  RatioReport report = ratio_report(inst, alloc, shares);
  REQUIRE(report.per_agent.size() == 2);
  CHECK(report.per_agent[0].achieved == 6);
  CHECK(report.per_agent[0].mms == 6);
  CHECK(report.per_agent[0].ratio == ExtRational(Rational(1)));
  CHECK(report.per_agent[1].achieved == 3);
  CHECK(report.per_agent[1].ratio == ExtRational(Rational(3, 2)));
  CHECK(report.min_ratio == ExtRational(Rational(1)));
}

TEST_CASE("ratio_report maps a zero maximin share to an infinite ratio") {
  Instance inst = parse_instance(R"({"m": 2, "groups": [[[0,0]], [[1,1]]]})");
  Allocation alloc{{1, 1}};
  RatioReport report = ratio_report(inst, alloc, {{Rational(0)}, {Rational(1)}});
  CHECK(report.per_agent[0].ratio.is_infinite());
  CHECK(report.per_agent[1].ratio == ExtRational(Rational(2)));
  CHECK(report.min_ratio == ExtRational(Rational(2)));

  RatioReport all_zero = ratio_report(inst, alloc, {{Rational(0)}, {Rational(0)}});
  CHECK(all_zero.min_ratio.is_infinite());
}

TEST_CASE("ratio_report validates the shares table shape") {
  Instance inst = worked_example();
  Allocation alloc{{0, 1, 1, 1}};
  CHECK_THROWS_AS(ratio_report(inst, alloc, {{Rational(6)}}), std::invalid_argument);
  CHECK_THROWS_AS(ratio_report(inst, alloc, {{Rational(6), Rational(1)}, {Rational(2)}}),
                  std::invalid_argument);
}

TEST_CASE("allocation JSON round-trips and is validated against the instance") {
  Instance inst = worked_example();
  Allocation alloc{{1, 0, 1, 0}};
  Allocation back = parse_allocation(allocation_to_json(alloc), inst);
  CHECK(back == alloc);
  CHECK_THROWS_AS(parse_allocation(R"({"assignment": [0, 1]})", inst), ParseError);
  CHECK_THROWS_AS(parse_allocation(R"({"assignment": [0, 1, 2, 0]})", inst), ParseError);
  CHECK_THROWS_AS(parse_allocation(R"({"assignment": "x"})", inst), ParseError);
  CHECK_THROWS_AS(parse_allocation("[]", inst), ParseError);
}
