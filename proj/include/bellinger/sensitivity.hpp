#pragma once

// Empirical robustness of a Bellinger ranking to the choice of weights.
//
// Each sample multiplies every weight by an independent factor drawn
// uniformly from [1 - delta, 1 + delta], renormalizes the weights to sum to
// one and re-ranks the problem. Random numbers come from std::mt19937_64,
// whose output sequence is fixed by the C++ standard; doubles are formed from
// the top 53 bits of each draw, so reports are identical on every platform.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bellinger/error.hpp"
#include "bellinger/model.hpp"
#include "bellinger/ranking.hpp"

namespace bellinger {

/// Divides each weight by the sum so the result sums to one.
inline std::vector<double> renormalize_weights(std::span<const double> weights) {
  if (weights.empty()) throw Error("no weights to renormalize");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error("non-positive weight: " + detail::number_text(w));
    }
    sum += w;
  }
  std::vector<double> out;
  out.reserve(weights.size());
  for (double w : weights) out.push_back(w / sum);
  return out;
}

/// Copy of `problem` with its weights rescaled to sum to one.
inline DecisionProblem with_renormalized_weights(DecisionProblem problem) {
  std::vector<double> w;
  for (const auto& c : problem.criteria) w.push_back(c.weight);
  const auto scaled = renormalize_weights(w);
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    problem.criteria[i].weight = scaled[i];
  }
  return problem;
}

/// Fraction of alternative pairs ordered the same way in both rankings.
/// Both arguments are permutations of the same index set, best first.
inline double pairwise_concordance(std::span<const std::size_t> base,
                                   std::span<const std::size_t> other) {
  const auto n = base.size();
  if (other.size() != n) throw Error("rankings differ in length");
  if (n < 2) return 1.0;
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position.at(other[p]) = p;
  std::size_t agree = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (position[base[x]] < position[base[y]]) ++agree;
    }
  }
  return static_cast<double>(agree) / static_cast<double>(n * (n - 1) / 2);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

struct SensitivityReport {
  std::string base_best;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<std::string> alternative_ids;  // declaration order
  std::map<std::string, std::size_t> winner_histogram;
  std::vector<double> flip_ladder;       // perturbation sizes probed
  std::optional<double> min_flip_delta;  // smallest ladder entry that flipped
  std::vector<double> rank_correlations; // per sample, at `delta`

  double mean_correlation() const {
    if (rank_correlations.empty()) return 1.0;
    double sum = 0.0;
    for (double r : rank_correlations) sum += r;
    return sum / static_cast<double>(rank_correlations.size());
  }

  double min_correlation() const {
    double m = 1.0;
    for (double r : rank_correlations) m = std::min(m, r);
    return m;
  }
};

inline constexpr std::size_t kFlipLadderSteps = 10;

namespace detail {

struct SampleOutcome {
  std::size_t winner;
  std::vector<std::size_t> order;
};

inline SampleOutcome perturbed_outcome(const DecisionProblem& problem,
                                       std::span<const double> base_weights,
                                       double delta, std::mt19937_64& engine) {
  std::vector<double> w(base_weights.begin(), base_weights.end());
  for (double& x : w) x *= 1.0 + delta * (2.0 * unit_uniform(engine) - 1.0);
  w = renormalize_weights(w);
  DecisionProblem perturbed = problem;
  for (std::size_t i = 0; i < w.size(); ++i) perturbed.criteria[i].weight = w[i];
  auto r = rank(perturbed);
  return {r.order.front(), std::move(r.order)};
}

}  // namespace detail

/// Monte Carlo weight perturbation. Deterministic in (problem, delta,
/// samples, seed). `delta` = 0 is accepted and reproduces the base ranking
/// in every sample.
///
/// The winner histogram and the rank correlations are taken at `delta`. The
/// flip search re-runs the same number of samples at delta * k / 10 for
/// k = 1..10, each step with its own stream seeded by {seed, k}, and reports
/// the first step at which any sample's winner differs from the base winner.
inline SensitivityReport perturb_weights(const DecisionProblem& problem,
                                         double delta, std::size_t samples,
                                         std::uint64_t seed) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error("delta must lie in [0, 1), got " + detail::number_text(delta));
  }
  if (samples == 0) throw Error("samples must be at least 1");

  const auto base = rank(problem);
  std::vector<double> weights;
  for (const auto& c : problem.criteria) weights.push_back(c.weight);
  const auto base_winner = base.order.front();

  SensitivityReport report;
  report.base_best = base.best;
  report.delta = delta;
  report.seed = seed;
  report.samples = samples;
  report.alternative_ids = base.alternative_ids;
  for (const auto& id : base.alternative_ids) report.winner_histogram[id] = 0;

  std::mt19937_64 engine(seed);
  report.rank_correlations.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto outcome = detail::perturbed_outcome(problem, weights, delta, engine);
    ++report.winner_histogram[base.alternative_ids[outcome.winner]];
    report.rank_correlations.push_back(
        pairwise_concordance(base.order, outcome.order));
  }

  for (std::size_t k = 1; k <= kFlipLadderSteps; ++k) {
    const double step = delta * static_cast<double>(k) /
                        static_cast<double>(kFlipLadderSteps);
    report.flip_ladder.push_back(step);
    if (report.min_flip_delta) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 ladder_engine(seq);
    for (std::size_t s = 0; s < samples; ++s) {
      if (detail::perturbed_outcome(problem, weights, step, ladder_engine).winner !=
          base_winner) {
        report.min_flip_delta = step;
        break;
      }
    }
  }
  return report;
}

}  // namespace bellinger
