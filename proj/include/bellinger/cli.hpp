#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it in-process with string streams.
//
// Exit codes: 0 success, 1 data or validation error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellinger/combinatorics.hpp"
#include "bellinger/error.hpp"
#include "bellinger/matching.hpp"
#include "bellinger/problem_io.hpp"
#include "bellinger/ranking.hpp"
#include "bellinger/report.hpp"
#include "bellinger/sensitivity.hpp"

namespace bellinger::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct ProblemArgs {
  std::string criteria;
  std::string alternatives;
  bool clamp = false;
};

struct OutputArgs {
  std::string format = "table";
  int precision = 2;
  std::string scale = "percent";
  std::string out_dir;
};

inline void add_problem_options(CLI::App* cmd, ProblemArgs& args, bool with_clamp = true) {
  cmd->add_option("--criteria", args.criteria, "Criteria CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--alternatives", args.alternatives, "Alternatives CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  if (with_clamp) {
    cmd->add_flag("--clamp", args.clamp, "Snap out-of-range values to the nearest bound");
  }
}

inline void add_output_options(CLI::App* cmd, OutputArgs& args) {
  cmd->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--precision", args.precision, "Decimals shown in table and csv output")
      ->check(CLI::Range(0, kMaxPrecision));
  cmd->add_option("--scale", args.scale, "Scale of total ratings")
      ->check(CLI::IsMember({"percent", "unit"}));
  cmd->add_option("--out-dir", args.out_dir,
                  "With --format csv, write one file per table into this directory");
}

inline DecisionProblem load(const ProblemArgs& args) {
  LoadOptions options;
  options.clamp = args.clamp;
  return load_problem({args.criteria, args.alternatives}, options);
}

inline ReportOptions report_options(const OutputArgs& args) {
  return {*parse_format(args.format), args.precision, *parse_scale(args.scale)};
}

inline void emit(const RankingResult& ranking, const std::optional<MatchingSummary>& matching,
                 const OutputArgs& args, std::ostream& out) {
  const auto options = report_options(args);
  if (options.format == Format::Csv && !args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    for (const auto& [name, text] : report_csv_files(ranking, matching, options)) {
      const auto path = std::filesystem::path(args.out_dir) / name;
      std::ofstream file(path, std::ios::binary);
      if (!file) throw Error("cannot write " + path.string());
      file << text;
      out << path.string() << '\n';
    }
    return;
  }
  out << write_report(ranking, matching, options);
}

struct MatchArgs {
  std::string strategy = "ratings-by-weight";
  std::string proposers = "criteria";
};

inline void add_match_options(CLI::App* cmd, MatchArgs& args) {
  cmd->add_option("--strategy", args.strategy, "How preference lists are derived")
      ->check(CLI::IsMember({"ratings-by-weight", "row-value"}));
  cmd->add_option("--proposers", args.proposers, "Which side proposes")
      ->check(CLI::IsMember({"criteria", "alternatives"}));
}

inline MatchingSummary run_matching(const DecisionProblem& problem,
                                    const RankingResult& ranking, const MatchArgs& args) {
  const auto strategy = *parse_strategy(args.strategy);
  const auto side = args.proposers == "criteria" ? Side::A : Side::B;
  const auto profile = build_preferences(problem, ranking, strategy);
  return summarize_matching(ranking, profile, gale_shapley(profile, side), strategy);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bellinger multi-criteria ranking and Gale-Shapley matching", "bellinger"};
  app.require_subcommand(1);

  detail::ProblemArgs problem_args;
  detail::OutputArgs output_args;
  detail::MatchArgs match_args;

  auto* rank_cmd = app.add_subcommand("rank", "Rank alternatives with Bellinger's method");
  detail::add_problem_options(rank_cmd, problem_args);
  detail::add_output_options(rank_cmd, output_args);

  auto* match_cmd = app.add_subcommand("match", "Rank, then match criteria with alternatives");
  detail::add_problem_options(match_cmd, problem_args);
  detail::add_match_options(match_cmd, match_args);
  detail::add_output_options(match_cmd, output_args);

  auto* compare_cmd =
      app.add_subcommand("compare", "Show the Bellinger winner next to the matching");
  detail::add_problem_options(compare_cmd, problem_args);
  detail::add_match_options(compare_cmd, match_args);

  std::uint64_t n = 0;
  std::uint64_t k = 0;
  auto* subsets_cmd = app.add_subcommand("subsets", "Count k-element subsets of n items");
  subsets_cmd->add_option("--n", n, "Set size")->required();
  subsets_cmd->add_option("--k", k, "Subset size")->required();

  double delta = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  auto* sens_cmd = app.add_subcommand("sensitivity", "Perturb weights and tally winners");
  detail::add_problem_options(sens_cmd, problem_args);
  sens_cmd->add_option("--delta", delta, "Relative weight perturbation in [0, 1)")
      ->required();
  sens_cmd->add_option("--samples", samples, "Number of perturbed rankings")->required();
  sens_cmd->add_option("--seed", seed, "Seed of the mt19937_64 generator")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*rank_cmd) {
      const auto problem = detail::load(problem_args);
      detail::emit(rank(problem), std::nullopt, output_args, out);
    } else if (*match_cmd) {
      const auto problem = detail::load(problem_args);
      const auto ranking = rank(problem);
      detail::emit(ranking, detail::run_matching(problem, ranking, match_args), output_args,
                   out);
    } else if (*compare_cmd) {
      const auto problem = detail::load(problem_args);
      const auto ranking = rank(problem);
      out << write_comparison(ranking, detail::run_matching(problem, ranking, match_args));
    } else if (*subsets_cmd) {
      out << count_subsets(n, k) << '\n';
    } else if (*sens_cmd) {
      const auto problem = detail::load(problem_args);
      out << write_sensitivity(perturb_weights(problem, delta, samples, seed));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace bellinger::cli
