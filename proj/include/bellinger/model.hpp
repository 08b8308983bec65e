#pragma once

// Decision problem types: criteria with bounds and weights, alternatives with
// raw values, and the validation rules a problem must satisfy before it is
// ranked.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <locale>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bellinger/error.hpp"

namespace bellinger {

enum class Direction { IncreaseDesired, DecreaseDesired };

inline std::string_view to_string(Direction d) {
  return d == Direction::IncreaseDesired ? "max" : "min";
}

inline std::optional<Direction> parse_direction(std::string_view token) {
  if (token == "max") return Direction::IncreaseDesired;
  if (token == "min") return Direction::DecreaseDesired;
  return std::nullopt;
}

struct Criterion {
  std::string id;
  std::string name;
  std::string unit;
  Direction direction = Direction::IncreaseDesired;
  double lower = 0.0;
  double upper = 1.0;
  double weight = 0.0;

  double width() const { return upper - lower; }

  bool operator==(const Criterion&) const = default;
};

struct Alternative {
  std::string id;
  std::string name;
  std::map<std::string, double> values;  // criterion id -> raw value

  bool operator==(const Alternative&) const = default;
};

inline constexpr double kDefaultWeightSumTolerance = 0.005;

struct DecisionProblem {
  std::vector<Criterion> criteria;
  std::vector<Alternative> alternatives;
  double weight_sum_tolerance = kDefaultWeightSumTolerance;

  std::size_t criterion_count() const { return criteria.size(); }
  std::size_t alternative_count() const { return alternatives.size(); }

  /// Raw value of alternative `j` on criterion `i` (declaration order).
  /// Throws if the alternative has no value for that criterion.
  double raw(std::size_t i, std::size_t j) const {
    const auto& values = alternatives.at(j).values;
    auto it = values.find(criteria.at(i).id);
    if (it == values.end()) {
      throw Error("alternative " + alternatives[j].id + " has no value for " +
                  criteria[i].id);
    }
    return it->second;
  }

  double weight_sum() const {
    double sum = 0.0;
    for (const auto& c : criteria) sum += c.weight;
    return sum;
  }

  bool operator==(const DecisionProblem&) const = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class Rule {
  NoCriteria,
  TooFewAlternatives,
  DuplicateCriterionId,
  DuplicateAlternativeId,
  EmptyId,
  NonFiniteNumber,
  DegenerateRange,
  NonPositiveWeight,
  WeightSum,
  MissingValue,
  UnknownCriterion,
  ValueOutOfRange,
};

struct Violation {
  Rule rule;
  std::string criterion;    // empty when not tied to a criterion
  std::string alternative;  // empty when not tied to an alternative
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  /// True if there is at least one violation and all of them are range
  /// violations that clamping would repair.
  bool only_range_violations() const {
    return !violations.empty() &&
           std::all_of(violations.begin(), violations.end(), [](const auto& v) {
             return v.rule == Rule::ValueOutOfRange;
           });
  }

  std::string summary() const {
    std::ostringstream out;
    for (const auto& v : violations) out << v.message << '\n';
    return out.str();
  }

  bool operator==(const ValidationReport&) const = default;
};

namespace detail {

inline std::string number_text(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(15);
  out << v;
  return out.str();
}

}  // namespace detail

/// Checks every structural and numeric invariant of a problem. Violations
/// are returned as data; the function never throws.
inline ValidationReport validate_problem(const DecisionProblem& problem) {
  ValidationReport report;
  auto add = [&](Rule rule, std::string crit, std::string alt,
                 std::string message) {
    report.violations.push_back(
        {rule, std::move(crit), std::move(alt), std::move(message)});
  };

  if (problem.criteria.empty()) {
    add(Rule::NoCriteria, "", "", "at least 1 criterion required");
  }
  if (problem.alternatives.size() < 2) {
    add(Rule::TooFewAlternatives, "", "", "at least 2 alternatives required");
  }

  std::set<std::string> criterion_ids;
  for (const auto& c : problem.criteria) {
    if (c.id.empty()) add(Rule::EmptyId, "", "", "criterion with empty id");
    if (!criterion_ids.insert(c.id).second) {
      add(Rule::DuplicateCriterionId, c.id, "",
          "duplicate criterion id " + c.id);
    }
    if (!std::isfinite(c.lower) || !std::isfinite(c.upper) ||
        !std::isfinite(c.weight)) {
      add(Rule::NonFiniteNumber, c.id, "",
          "non-finite bound or weight on " + c.id);
      continue;
    }
    if (!(c.upper > c.lower)) {
      add(Rule::DegenerateRange, c.id, "",
          "degenerate range on " + c.id + " (lower " +
              detail::number_text(c.lower) + ", upper " +
              detail::number_text(c.upper) + ")");
    }
    if (!(c.weight > 0.0)) {
      add(Rule::NonPositiveWeight, c.id, "",
          "non-positive weight on " + c.id);
    }
  }

  if (!problem.criteria.empty()) {
    const double sum = problem.weight_sum();
    if (!(std::fabs(sum - 1.0) <= problem.weight_sum_tolerance)) {
      add(Rule::WeightSum, "", "",
          "weights sum to " + detail::number_text(sum) + ", expected 1 +/- " +
              detail::number_text(problem.weight_sum_tolerance));
    }
  }

  std::set<std::string> alternative_ids;
  for (const auto& a : problem.alternatives) {
    if (a.id.empty()) add(Rule::EmptyId, "", "", "alternative with empty id");
    if (!alternative_ids.insert(a.id).second) {
      add(Rule::DuplicateAlternativeId, "", a.id,
          "duplicate alternative id " + a.id);
    }
    for (const auto& [crit_id, value] : a.values) {
      if (!criterion_ids.count(crit_id)) {
        add(Rule::UnknownCriterion, crit_id, a.id,
            "alternative " + a.id + " has a value for unknown criterion " +
                crit_id);
      }
    }
    for (const auto& c : problem.criteria) {
      auto it = a.values.find(c.id);
      if (it == a.values.end()) {
        add(Rule::MissingValue, c.id, a.id,
            "missing value for (" + c.id + ", " + a.id + ")");
        continue;
      }
      const double v = it->second;
      if (!std::isfinite(v)) {
        add(Rule::NonFiniteNumber, c.id, a.id,
            "non-finite value for (" + c.id + ", " + a.id + ")");
      } else if (v < c.lower || v > c.upper) {
        add(Rule::ValueOutOfRange, c.id, a.id,
            "value out of range at (" + c.id + ", " + a.id + "): " +
                detail::number_text(v) + " not in [" +
                detail::number_text(c.lower) + ", " +
                detail::number_text(c.upper) + "]");
      }
    }
  }
  return report;
}

/// Snaps every raw value into its criterion's [lower, upper] interval.
/// Values for unknown criteria are left untouched.
inline DecisionProblem clamp_values(DecisionProblem problem) {
  for (auto& a : problem.alternatives) {
    for (const auto& c : problem.criteria) {
      auto it = a.values.find(c.id);
      if (it == a.values.end() || !(c.upper >= c.lower)) continue;
      it->second = std::clamp(it->second, c.lower, c.upper);
    }
  }
  return problem;
}

/// Thrown when a problem fails validation at a boundary that requires it.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error("invalid decision problem:\n" + report.summary()),
        report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace bellinger
