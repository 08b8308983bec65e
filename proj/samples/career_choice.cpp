// Ranks three job offers on salary, commute and growth, then pairs the
// criteria with the offers by deferred acceptance.

#include <iostream>

#include "bellinger/bellinger.hpp"

int main() {
  using bellinger::Direction;

  bellinger::DecisionProblem problem;
  problem.criteria = {
      {"growth", "career development", "score", Direction::IncreaseDesired, 1, 5, 0.5},
      {"salary", "net salary", "PLN", Direction::IncreaseDesired, 2500, 4000, 0.3},
      {"commute", "distance from home", "km", Direction::DecreaseDesired, 0, 60, 0.2},
  };
  problem.alternatives = {
      {"acme", "Acme", {{"growth", 4}, {"salary", 3100}, {"commute", 25}}},
      {"globex", "Globex", {{"growth", 2}, {"salary", 3900}, {"commute", 5}}},
      {"initech", "Initech", {{"growth", 5}, {"salary", 2700}, {"commute", 50}}},
  };

  const auto report = bellinger::validate_problem(problem);
  if (!report.ok()) {
    std::cerr << report.summary();
    return 1;
  }

  const auto ranking = bellinger::rank(problem);
  const auto profile = bellinger::build_preferences(problem, ranking);
  const auto matching = bellinger::gale_shapley(profile);
  const auto summary = bellinger::summarize_matching(
      ranking, profile, matching, bellinger::PreferenceStrategy::RatingsByWeight);

  std::cout << bellinger::write_report(ranking, summary);
  return 0;
}
