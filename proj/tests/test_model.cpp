#include <gtest/gtest.h>

#include <random>

#include "bellinger/model.hpp"
#include "bellinger/ranking.hpp"
#include "oracles.hpp"

using namespace bellinger;

namespace {

bool has_rule(const ValidationReport& r, Rule rule) {
  for (const auto& v : r.violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

}  // namespace

TEST(ValidateProblem, BundledFixtureIsValid) {
  const auto p = oracle::fixture_problem();
  EXPECT_NEAR(p.weight_sum(), 1.001, 1e-12);
  const auto report = validate_problem(p);
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(ValidateProblem, WeightSumOutsideToleranceIsReported) {
  auto p = oracle::fixture_problem();
  p.weight_sum_tolerance = 0.0005;
  const auto report = validate_problem(p);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].rule, Rule::WeightSum);
}

TEST(ValidateProblem, DegenerateRange) {
  auto p = oracle::fixture_problem();
  p.criteria[0].lower = 3;
  p.criteria[0].upper = 3;
  for (auto& a : p.alternatives) a.values["c1"] = 3;
  const auto report = validate_problem(p);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].rule, Rule::DegenerateRange);
  EXPECT_EQ(report.violations[0].criterion, "c1");
  EXPECT_NE(report.violations[0].message.find("degenerate range on c1"), std::string::npos);
}

TEST(ValidateProblem, InvertedRangeIsDegenerate) {
  auto p = oracle::fixture_problem();
  std::swap(p.criteria[3].lower, p.criteria[3].upper);
  EXPECT_TRUE(has_rule(validate_problem(p), Rule::DegenerateRange));
}

TEST(ValidateProblem, ValueBelowLowerBound) {
  auto p = oracle::fixture_problem();
  p.alternatives[0].values["c2"] = 2000;  // below 2502.87
  const auto report = validate_problem(p);
  ASSERT_EQ(report.violations.size(), 1u);
  const auto& v = report.violations[0];
  EXPECT_EQ(v.rule, Rule::ValueOutOfRange);
  EXPECT_EQ(v.criterion, "c2");
  EXPECT_EQ(v.alternative, "p1");
  EXPECT_NE(v.message.find("value out of range"), std::string::npos);
  EXPECT_TRUE(report.only_range_violations());
}

TEST(ValidateProblem, StructuralViolationsAreAllListed) {
  DecisionProblem p;
  auto report = validate_problem(p);
  EXPECT_TRUE(has_rule(report, Rule::NoCriteria));
  EXPECT_TRUE(has_rule(report, Rule::TooFewAlternatives));

  p = oracle::fixture_problem();
  p.criteria[1].id = "c1";
  p.alternatives[1].id = "p1";
  p.criteria[4].weight = 0;
  p.alternatives[2].values.erase("c7");
  p.alternatives[3].values["c99"] = 1;
  report = validate_problem(p);
  EXPECT_TRUE(has_rule(report, Rule::DuplicateCriterionId));
  EXPECT_TRUE(has_rule(report, Rule::DuplicateAlternativeId));
  EXPECT_TRUE(has_rule(report, Rule::NonPositiveWeight));
  EXPECT_TRUE(has_rule(report, Rule::MissingValue));
  EXPECT_TRUE(has_rule(report, Rule::UnknownCriterion));
  EXPECT_FALSE(report.only_range_violations());
}

TEST(ValidateProblem, NonFiniteNumbers) {
  auto p = oracle::fixture_problem();
  p.alternatives[0].values["c5"] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_TRUE(has_rule(validate_problem(p), Rule::NonFiniteNumber));
  p = oracle::fixture_problem();
  p.criteria[2].upper = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(has_rule(validate_problem(p), Rule::NonFiniteNumber));
}

TEST(ValidateProblem, IsPureAndIdempotent) {
  auto p = oracle::fixture_problem();
  p.alternatives[0].values["c2"] = 2000;
  p.criteria[5].weight = -1;
  const auto copy = p;
  const auto first = validate_problem(p);
  const auto second = validate_problem(p);
  EXPECT_EQ(first, second);
  EXPECT_EQ(p, copy);
}

TEST(ClampValues, SnapsToNearestBound) {
  auto p = oracle::fixture_problem();
  p.alternatives[0].values["c2"] = 2000;
  p.alternatives[1].values["c10"] = 900;
  const auto clamped = clamp_values(p);
  EXPECT_DOUBLE_EQ(clamped.alternatives[0].values.at("c2"), 2502.87);
  EXPECT_DOUBLE_EQ(clamped.alternatives[1].values.at("c10"), 762.4);
  EXPECT_TRUE(validate_problem(clamped).ok());
}

TEST(Direction, Tokens) {
  EXPECT_EQ(parse_direction("max"), Direction::IncreaseDesired);
  EXPECT_EQ(parse_direction("min"), Direction::DecreaseDesired);
  EXPECT_FALSE(parse_direction("neutral").has_value());
  EXPECT_EQ(to_string(Direction::DecreaseDesired), "min");
}

// A problem that passes validation never yields a failing or out-of-[0, 1]
// normalization.
TEST(ValidateProblem, ValidProblemsNormalizeSafely) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = oracle::random_problem(rng, oracle::pick(rng, 1, 12), oracle::pick(rng, 2, 8));
    ASSERT_TRUE(validate_problem(p).ok());
    NormalizedMatrix m;
    ASSERT_NO_THROW(m = normalize_matrix(p));
    for (std::size_t i = 0; i < m.entries.rows(); ++i) {
      for (double x : m.entries.row(i)) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
    }
  }
}
