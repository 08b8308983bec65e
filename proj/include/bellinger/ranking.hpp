#pragma once

// Bellinger's weighted "path" method: each raw value becomes the fraction of
// the way from the least to the most desirable bound of its criterion, the
// fractions are multiplied by criterion weights, and each alternative's total
// rating is the column sum. All arithmetic is carried out at full double
// precision; rounding happens only when results are displayed.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bellinger/error.hpp"
#include "bellinger/model.hpp"

namespace bellinger {

/// Dense row-major matrix indexed [criterion][alternative].
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Path fractions in [0, 1].
struct NormalizedMatrix {
  Matrix entries;
  bool operator==(const NormalizedMatrix&) const = default;
};

/// Path fractions multiplied by criterion weights.
struct WeightedMatrix {
  Matrix entries;
  bool operator==(const WeightedMatrix&) const = default;
};

/// Total ratings on the percent scale (100 x weighted column sum), in
/// alternative declaration order, plus the descending rank order.
struct Totals {
  std::vector<double> values;
  std::vector<std::size_t> order;  // indices into values, best first
  bool operator==(const Totals&) const = default;
};

struct RankingResult {
  std::vector<std::string> criterion_ids;
  std::vector<double> weights;
  std::vector<std::string> alternative_ids;
  NormalizedMatrix normalized;
  WeightedMatrix weighted;
  std::vector<double> totals;      // percent scale, declaration order
  std::vector<std::size_t> order;  // alternative indices, best first
  std::string best;

  std::size_t index_of(const std::string& alternative_id) const {
    auto it = std::find(alternative_ids.begin(), alternative_ids.end(),
                        alternative_id);
    if (it == alternative_ids.end()) {
      throw Error("unknown alternative " + alternative_id);
    }
    return static_cast<std::size_t>(it - alternative_ids.begin());
  }

  double total(const std::string& alternative_id) const {
    return totals[index_of(alternative_id)];
  }

  std::vector<std::string> order_ids() const {
    std::vector<std::string> ids;
    ids.reserve(order.size());
    for (auto j : order) ids.push_back(alternative_ids[j]);
    return ids;
  }

  bool operator==(const RankingResult&) const = default;
};

inline constexpr double kPercentScale = 100.0;

/// Fraction of the path from the least desirable bound to the most desirable
/// one that `value` covers.
inline double normalize_value(double value, const Criterion& criterion) {
  const double width = criterion.upper - criterion.lower;
  if (!(width > 0.0)) {
    throw Error("degenerate criterion range on " + criterion.id);
  }
  if (!(value >= criterion.lower && value <= criterion.upper)) {
    throw Error("value out of range on " + criterion.id + ": " +
                detail::number_text(value));
  }
  // Decrease-desired is the complement of the increase-desired fraction, so
  // flipping a criterion's direction maps x to exactly 1 - x.
  const double rising = (value - criterion.lower) / width;
  return criterion.direction == Direction::IncreaseDesired ? rising : 1.0 - rising;
}

inline NormalizedMatrix normalize_matrix(const DecisionProblem& problem) {
  const auto rows = problem.criterion_count();
  const auto cols = problem.alternative_count();
  NormalizedMatrix out{Matrix(rows, cols)};
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        out.entries(i, j) = normalize_value(problem.raw(i, j), problem.criteria[i]);
      } catch (const Error& e) {
        throw Error("cell (" + problem.criteria[i].id + ", " +
                    problem.alternatives[j].id + "): " + e.what());
      }
    }
  }
  return out;
}

inline WeightedMatrix apply_weights(const NormalizedMatrix& normalized,
                                    std::span<const Criterion> criteria) {
  const auto& m = normalized.entries;
  if (m.rows() != criteria.size()) {
    throw Error("dimension mismatch: " + std::to_string(m.rows()) +
                " matrix rows for " + std::to_string(criteria.size()) +
                " criteria");
  }
  WeightedMatrix out{Matrix(m.rows(), m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.entries(i, j) = criteria[i].weight * m(i, j);
    }
  }
  return out;
}

/// Column sums on the percent scale. The order is a stable descending sort,
/// so exact ties keep declaration order.
inline Totals total_ratings(const WeightedMatrix& weighted,
                            std::size_t alternative_count) {
  const auto& m = weighted.entries;
  if (m.cols() != alternative_count) {
    throw Error("dimension mismatch: " + std::to_string(m.cols()) +
                " matrix columns for " + std::to_string(alternative_count) +
                " alternatives");
  }
  Totals out;
  out.values.assign(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, j);
    out.values[j] = kPercentScale * sum;
  }
  out.order.resize(m.cols());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return out.values[a] > out.values[b];
                   });
  return out;
}

/// Argmax of the totals; the earliest-declared alternative wins exact ties.
inline std::string best_variant(const RankingResult& ranking) {
  if (ranking.totals.empty()) throw Error("no alternatives to choose from");
  std::size_t best = 0;
  for (std::size_t j = 1; j < ranking.totals.size(); ++j) {
    if (ranking.totals[j] > ranking.totals[best]) best = j;
  }
  return ranking.alternative_ids[best];
}

inline RankingResult rank(const DecisionProblem& problem) {
  RankingResult result;
  for (const auto& c : problem.criteria) {
    result.criterion_ids.push_back(c.id);
    result.weights.push_back(c.weight);
  }
  for (const auto& a : problem.alternatives) {
    result.alternative_ids.push_back(a.id);
  }
  result.normalized = normalize_matrix(problem);
  result.weighted = apply_weights(result.normalized, problem.criteria);
  auto totals = total_ratings(result.weighted, problem.alternative_count());
  result.totals = std::move(totals.values);
  result.order = std::move(totals.order);
  result.best = best_variant(result);
  return result;
}

}  // namespace bellinger
