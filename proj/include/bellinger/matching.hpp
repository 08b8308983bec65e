#pragma once

// Two-sided one-to-one matching between criteria (side A) and alternatives
// (side B): preference construction from a ranking, deferred acceptance,
// blocking-pair detection and exhaustive enumeration of stable matchings for
// small instances.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellinger/error.hpp"
#include "bellinger/model.hpp"
#include "bellinger/ranking.hpp"

namespace bellinger {

enum class Side { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

/// Strict, complete preferences for two equally sized sides. prefs_a[i] lists
/// indices into side_b, most preferred first; prefs_b likewise.
struct PreferenceProfile {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;
  std::vector<std::vector<std::size_t>> prefs_a;
  std::vector<std::vector<std::size_t>> prefs_b;

  std::size_t size() const { return side_a.size(); }

  bool operator==(const PreferenceProfile&) const = default;
};

/// A perfect matching: a_to_b[i] is the side-B partner of side-A agent i.
struct Matching {
  std::vector<std::size_t> a_to_b;
  Side proposers = Side::A;

  std::vector<std::size_t> b_to_a() const {
    std::vector<std::size_t> inverse(a_to_b.size());
    for (std::size_t i = 0; i < a_to_b.size(); ++i) inverse[a_to_b[i]] = i;
    return inverse;
  }

  bool same_pairs(const Matching& other) const { return a_to_b == other.a_to_b; }

  bool operator==(const Matching&) const = default;
};

/// Matched (a-id, b-id) pairs in side-A declaration order.
inline std::vector<std::pair<std::string, std::string>> pairs(
    const PreferenceProfile& profile, const Matching& matching) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < matching.a_to_b.size(); ++i) {
    out.emplace_back(profile.side_a.at(i), profile.side_b.at(matching.a_to_b[i]));
  }
  return out;
}

namespace detail {

inline bool is_permutation_of_n(const std::vector<std::size_t>& v, std::size_t n) {
  if (v.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto x : v) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

// rank[agent][partner] = position of partner in agent's list (0 = best).
inline std::vector<std::vector<std::size_t>> rank_table(
    const std::vector<std::vector<std::size_t>>& prefs) {
  std::vector<std::vector<std::size_t>> table(prefs.size());
  for (std::size_t agent = 0; agent < prefs.size(); ++agent) {
    table[agent].resize(prefs[agent].size());
    for (std::size_t pos = 0; pos < prefs[agent].size(); ++pos) {
      table[agent][prefs[agent][pos]] = pos;
    }
  }
  return table;
}

}  // namespace detail

/// Throws unless both sides have the same size and every list is a
/// permutation of the opposite side.
inline void check_profile(const PreferenceProfile& p) {
  const auto n = p.side_a.size();
  if (p.side_b.size() != n) {
    throw Error("preference profile sides differ in size: " +
                std::to_string(n) + " vs " + std::to_string(p.side_b.size()));
  }
  if (p.prefs_a.size() != n || p.prefs_b.size() != n) {
    throw Error("preference profile needs one list per agent");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::is_permutation_of_n(p.prefs_a[i], n)) {
      throw Error("preferences of " + p.side_a[i] +
                  " are not a strict ranking of every opposite agent");
    }
    if (!detail::is_permutation_of_n(p.prefs_b[i], n)) {
      throw Error("preferences of " + p.side_b[i] +
                  " are not a strict ranking of every opposite agent");
    }
  }
}

/// Throws unless `m` is a perfect matching on the profile's agents.
inline void check_matching(const PreferenceProfile& p, const Matching& m) {
  const auto n = p.size();
  if (m.a_to_b.size() != n) {
    throw Error("matching covers " + std::to_string(m.a_to_b.size()) +
                " agents, profile has " + std::to_string(n));
  }
  for (auto b : m.a_to_b) {
    if (b >= n) throw Error("matching references unknown agent");
  }
  if (!detail::is_permutation_of_n(m.a_to_b, n)) {
    throw Error("matching assigns an agent twice");
  }
}

enum class PreferenceStrategy { RatingsByWeight, RowValue };

inline std::string_view to_string(PreferenceStrategy s) {
  return s == PreferenceStrategy::RatingsByWeight ? "ratings-by-weight"
                                                  : "row-value";
}

inline std::optional<PreferenceStrategy> parse_strategy(std::string_view token) {
  if (token == "ratings-by-weight") return PreferenceStrategy::RatingsByWeight;
  if (token == "row-value") return PreferenceStrategy::RowValue;
  return std::nullopt;
}

namespace detail {

// Indices sorted by descending key; ties keep index order.
template <class Key>
std::vector<std::size_t> descending_by(std::vector<std::size_t> idx, Key key) {
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return key(x) > key(y); });
  return idx;
}

// The k largest indices by key, restored to declaration order.
template <class Key>
std::vector<std::size_t> top_k(std::size_t n, std::size_t k, Key key) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  idx = descending_by(std::move(idx), key);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

/// Derives strict preferences between criteria and alternatives from a
/// ranking. The larger side is truncated to the size of the smaller one:
/// criteria keep the heaviest weights, alternatives the highest totals.
///
/// RatingsByWeight: each criterion ranks positions by total rating; each
/// position ranks criteria by weight. RowValue: each criterion ranks positions
/// by its own weighted row; positions still rank criteria by weight. Ties
/// always fall back to declaration order.
inline PreferenceProfile build_preferences(
    const DecisionProblem& problem, const RankingResult& ranking,
    PreferenceStrategy strategy = PreferenceStrategy::RatingsByWeight) {
  const auto nc = problem.criterion_count();
  const auto na = problem.alternative_count();
  if (nc == 0 || na == 0) throw Error("cannot match an empty problem");
  if (ranking.totals.size() != na || ranking.weighted.entries.rows() != nc) {
    throw Error("ranking does not belong to this problem");
  }
  const auto n = std::min(nc, na);

  auto weight = [&](std::size_t i) { return problem.criteria[i].weight; };
  auto total = [&](std::size_t j) { return ranking.totals[j]; };
  const auto crit = detail::top_k(nc, n, weight);
  const auto alt = detail::top_k(na, n, total);

  PreferenceProfile p;
  for (auto i : crit) p.side_a.push_back(problem.criteria[i].id);
  for (auto j : alt) p.side_b.push_back(problem.alternatives[j].id);

  std::vector<std::size_t> local(n);
  std::iota(local.begin(), local.end(), std::size_t{0});

  for (std::size_t a = 0; a < n; ++a) {
    const auto row = crit[a];
    if (strategy == PreferenceStrategy::RatingsByWeight) {
      p.prefs_a.push_back(detail::descending_by(
          local, [&](std::size_t b) { return total(alt[b]); }));
    } else {
      p.prefs_a.push_back(detail::descending_by(local, [&](std::size_t b) {
        return ranking.weighted.entries(row, alt[b]);
      }));
    }
  }
  const auto by_weight = detail::descending_by(
      local, [&](std::size_t a) { return weight(crit[a]); });
  p.prefs_b.assign(n, by_weight);
  return p;
}

struct ProposalTrace {
  Matching matching;
  std::size_t proposals = 0;
};

/// Deferred acceptance. Proposers walk down their lists; each receiver holds
/// the best proposal seen so far. The result is stable and optimal for the
/// proposing side; at most n^2 proposals are made.
inline ProposalTrace deferred_acceptance(const PreferenceProfile& profile,
                                         Side proposers = Side::A) {
  check_profile(profile);
  const auto n = profile.size();
  const auto& proposer_prefs =
      proposers == Side::A ? profile.prefs_a : profile.prefs_b;
  const auto receiver_rank =
      detail::rank_table(proposers == Side::A ? profile.prefs_b : profile.prefs_a);

  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next_choice(n, 0);
  std::vector<std::size_t> held_by(n, kNone);  // receiver -> proposer
  std::deque<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) free.push_back(i);

  ProposalTrace trace;
  while (!free.empty()) {
    const auto proposer = free.front();
    free.pop_front();
    const auto receiver = proposer_prefs[proposer][next_choice[proposer]++];
    ++trace.proposals;
    const auto current = held_by[receiver];
    if (current == kNone) {
      held_by[receiver] = proposer;
    } else if (receiver_rank[receiver][proposer] < receiver_rank[receiver][current]) {
      held_by[receiver] = proposer;
      free.push_back(current);
    } else {
      free.push_back(proposer);
    }
  }

  trace.matching.proposers = proposers;
  trace.matching.a_to_b.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (proposers == Side::A) {
      trace.matching.a_to_b[held_by[r]] = r;
    } else {
      trace.matching.a_to_b[r] = held_by[r];
    }
  }
  return trace;
}

inline Matching gale_shapley(const PreferenceProfile& profile,
                             Side proposers = Side::A) {
  return deferred_acceptance(profile, proposers).matching;
}

struct StabilityReport {
  bool stable = true;
  std::vector<std::pair<std::size_t, std::size_t>> blocking;  // (a, b)
};

/// Lists every blocking pair: a prefers b to its partner and b prefers a to
/// its partner. Pairs come out ordered by (a, b).
inline StabilityReport is_stable(const PreferenceProfile& profile,
                                 const Matching& matching) {
  check_profile(profile);
  check_matching(profile, matching);
  const auto rank_a = detail::rank_table(profile.prefs_a);
  const auto rank_b = detail::rank_table(profile.prefs_b);
  const auto b_to_a = matching.b_to_a();

  StabilityReport report;
  for (std::size_t a = 0; a < profile.size(); ++a) {
    const auto partner = matching.a_to_b[a];
    // Only partners a ranks above its own can block.
    for (std::size_t pos = 0; pos < rank_a[a][partner]; ++pos) {
      const auto b = profile.prefs_a[a][pos];
      if (rank_b[b][a] < rank_b[b][b_to_a[b]]) report.blocking.emplace_back(a, b);
    }
  }
  std::sort(report.blocking.begin(), report.blocking.end());
  report.stable = report.blocking.empty();
  return report;
}

inline constexpr std::size_t kMaxEnumerationSize = 7;

/// Every stable matching, found by checking all n! perfect matchings.
/// Results are in lexicographic order of the side-A partner vector.
inline std::vector<Matching> enumerate_stable(const PreferenceProfile& profile) {
  check_profile(profile);
  if (profile.size() > kMaxEnumerationSize) {
    throw Error("instance too large for enumeration (n = " +
                std::to_string(profile.size()) + ", limit " +
                std::to_string(kMaxEnumerationSize) + ")");
  }
  std::vector<Matching> out;
  Matching candidate;
  candidate.a_to_b.resize(profile.size());
  std::iota(candidate.a_to_b.begin(), candidate.a_to_b.end(), std::size_t{0});
  do {
    if (is_stable(profile, candidate).stable) out.push_back(candidate);
  } while (std::next_permutation(candidate.a_to_b.begin(), candidate.a_to_b.end()));
  return out;
}

}  // namespace bellinger
