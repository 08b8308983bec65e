#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "bellinger/report.hpp"
#include "oracles.hpp"

using namespace bellinger;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(BELLINGER_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

MatchingSummary fixture_matching(const DecisionProblem& p, const RankingResult& r) {
  const auto profile = build_preferences(p, r);
  return summarize_matching(r, profile, gale_shapley(profile), PreferenceStrategy::RatingsByWeight);
}

std::string section(const std::string& text, const std::string& title) {
  const auto start = text.find(title + "\n");
  if (start == std::string::npos) return "";
  const auto end = text.find("\n\n", start);
  return text.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

TEST(FormatFixed, RoundsHalfUp) {
  EXPECT_EQ(format_fixed(0.02525, 3), "0.025");
  EXPECT_EQ(format_fixed(0.02525, 4), "0.0253");
  EXPECT_EQ(format_fixed(0.125, 2), "0.13");
  EXPECT_EQ(format_fixed(2.675, 2), "2.68");
  EXPECT_EQ(format_fixed(56.875, 2), "56.88");
  EXPECT_EQ(format_fixed(-0.125, 2), "-0.13");
  EXPECT_EQ(format_fixed(-0.001, 2), "0.00");
  EXPECT_EQ(format_fixed(0.0, 0), "0");
  EXPECT_EQ(format_fixed(9.5, 0), "10");
  EXPECT_EQ(format_fixed(1.0, 3), "1.000");
  EXPECT_EQ(format_fixed(0.004, 2), "0.00");
  EXPECT_EQ(format_fixed(123.456, 1), "123.5");
}

TEST(FormatFixed, ClampsPrecisionAndHandlesSpecials) {
  EXPECT_EQ(format_fixed(1.5, -3), "2");
  EXPECT_EQ(format_fixed(1.0, 40), "1." + std::string(kMaxPrecision, '0'));
  EXPECT_EQ(format_fixed(std::numeric_limits<double>::infinity(), 2), "inf");
  EXPECT_EQ(format_fixed(std::nan(""), 2), "nan");
}

// Decimal ties written as text and parsed with strtod must round up, and
// values already on the grid must print unchanged, at every precision.
TEST(FormatFixed, DecimalTiesFromText) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20000; ++trial) {
    const int p = static_cast<int>(oracle::pick(rng, 0, kMaxPrecision));
    const auto digits = oracle::pick(rng, 0, 999999);
    std::string grid = std::to_string(digits);
    if (p > 0) {
      if (grid.size() <= static_cast<std::size_t>(p)) grid.insert(0, p + 1 - grid.size(), '0');
      grid.insert(grid.size() - p, 1, '.');
    }
    ASSERT_EQ(format_fixed(std::strtod(grid.c_str(), nullptr), p), grid);

    std::string up = std::to_string(digits + 1);
    if (p > 0) {
      if (up.size() <= static_cast<std::size_t>(p)) up.insert(0, p + 1 - up.size(), '0');
      up.insert(up.size() - p, 1, '.');
    }
    const std::string tie = grid + (p > 0 ? "5" : ".5");
    ASSERT_EQ(format_fixed(std::strtod(tie.c_str(), nullptr), p), up) << tie;
  }
}

TEST(TextTable, AlignsAndTrims) {
  TextTable t({TextTable::Align::Left, TextTable::Align::Right, TextTable::Align::Left});
  t.add_row({"id", "value", ""});
  t.add_row({"longer", "1.5", "x"});
  t.add_row({"a", "10.25"});
  EXPECT_EQ(t.render(),
            "id      value\n"
            "longer    1.5  x\n"
            "a       10.25\n");
}

TEST(WriteReport, FixtureTableMatchesGolden) {
  const auto p = oracle::fixture_problem();
  const auto r = rank(p);
  const auto golden = read_golden("green_jobs_match.txt");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(write_report(r, fixture_matching(p, r)), golden);
}

TEST(WriteReport, TotalsSectionListsBestFirst) {
  const auto r = rank(oracle::fixture_problem());
  const auto totals = section(write_report(r, std::nullopt), "Total ratings (percent)");
  std::istringstream in(totals);
  std::string line;
  std::getline(in, line);  // title
  std::getline(in, line);  // header
  std::getline(in, line);
  std::istringstream first(line);
  std::string position, variant;
  double total = 0;
  first >> position >> variant >> total;
  EXPECT_EQ(position, "1");
  EXPECT_EQ(variant, "p4");
  EXPECT_NEAR(total, 56.87, 0.02);
}

TEST(WriteReport, MatchingSectionOnlyWhenGiven) {
  const auto p = oracle::fixture_problem();
  const auto r = rank(p);
  const auto plain = write_report(r, std::nullopt);
  EXPECT_EQ(plain.find("Matching"), std::string::npos);
  EXPECT_NE(plain.find("Best variant: p4\n"), std::string::npos);
  EXPECT_NE(write_report(r, fixture_matching(p, r)).find("Matching (criteria propose"),
            std::string::npos);
}

TEST(WriteReport, UnitScaleAndPrecision) {
  const auto r = rank(oracle::fixture_problem());
  ReportOptions options;
  options.scale = Scale::Unit;
  options.precision = 4;
  const auto text = write_report(r, std::nullopt, options);
  EXPECT_NE(text.find("Total ratings (unit)"), std::string::npos);
  EXPECT_NE(text.find("p4       " + format_fixed(r.total("p4") / 100.0, 4)), std::string::npos)
      << text;
  EXPECT_NE(text.find("0.02525"), std::string::npos);  // weighted at precision + 1
}

TEST(ReportJson, ReparsesToRanking) {
  const auto p = oracle::fixture_problem();
  const auto r = rank(p);
  ReportOptions options;
  options.format = Format::Json;
  const auto doc = nlohmann::json::parse(write_report(r, fixture_matching(p, r), options));
  EXPECT_EQ(doc["scale"], "percent");
  EXPECT_EQ(doc["best"], "p4");
  EXPECT_EQ(doc["order"].get<std::vector<std::string>>(), r.order_ids());
  EXPECT_EQ(doc["criteria"].get<std::vector<std::string>>(), r.criterion_ids);
  for (std::size_t i = 0; i < r.criterion_ids.size(); ++i) {
    for (std::size_t j = 0; j < r.alternative_ids.size(); ++j) {
      EXPECT_NEAR(doc["normalized"][i][j].get<double>(), r.normalized.entries(i, j), 1e-9);
      EXPECT_NEAR(doc["weighted"][i][j].get<double>(), r.weighted.entries(i, j), 1e-9);
    }
  }
  for (std::size_t j = 0; j < r.alternative_ids.size(); ++j) {
    EXPECT_NEAR(doc["totals"][r.alternative_ids[j]].get<double>(), r.totals[j], 1e-9);
  }
  const auto& pairs_json = doc["matching"]["pairs"];
  ASSERT_EQ(pairs_json.size(), 5u);
  EXPECT_EQ(pairs_json[0]["criterion"], "c1");
  EXPECT_EQ(pairs_json[0]["alternative"], "p4");
  EXPECT_EQ(doc["matching"]["proposers"], "criteria");
}

TEST(ReportJson, UnitScaleDividesTotals) {
  const auto r = rank(oracle::fixture_problem());
  const auto doc = report_json(r, std::nullopt, Scale::Unit);
  EXPECT_EQ(doc["scale"], "unit");
  EXPECT_NEAR(doc["totals"]["p4"].get<double>(), r.total("p4") / 100.0, 1e-15);
  EXPECT_FALSE(doc.contains("matching"));
}

TEST(ReportCsv, OneDocumentPerTable) {
  const auto p = oracle::fixture_problem();
  const auto r = rank(p);
  ReportOptions options;
  options.format = Format::Csv;
  const auto files = report_csv_files(r, fixture_matching(p, r), options);
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(files[0].first, "normalized.csv");
  EXPECT_EQ(files[1].first, "weighted.csv");
  EXPECT_EQ(files[2].first, "totals.csv");
  EXPECT_EQ(files[3].first, "matching.csv");
  EXPECT_EQ(files[2].second,
            "rank,variant,total\n1,p4,56.88\n2,p3,56.67\n3,p1,54.75\n4,p2,49.66\n5,p5,30.64\n");
  EXPECT_EQ(files[0].second.substr(0, files[0].second.find('\n')), "criterion,p1,p2,p3,p4,p5");

  // Every CSV document parses back with consistent widths.
  for (const auto& [name, text] : files) {
    const auto records = csv::parse(text, name);
    ASSERT_FALSE(records.empty());
    for (const auto& rec : records) EXPECT_EQ(rec.fields.size(), records[0].fields.size());
  }
  const auto joined = write_report(r, std::nullopt, options);
  EXPECT_EQ(joined.rfind("# normalized.csv\n", 0), 0u);
  EXPECT_NE(joined.find("\n# totals.csv\n"), std::string::npos);
  EXPECT_EQ(joined.find("matching.csv"), std::string::npos);
}

TEST(WriteComparison, FixtureAgreement) {
  const auto p = oracle::fixture_problem();
  const auto r = rank(p);
  const auto text = write_comparison(r, fixture_matching(p, r));
  EXPECT_NE(text.find("Bellinger best variant: p4 (56.88)\n"), std::string::npos);
  EXPECT_NE(text.find("Top pair: c1-p4\n"), std::string::npos);
  EXPECT_NE(text.find("Agreement:"), std::string::npos);
  EXPECT_NE(text.find("p4        56.88  <- Bellinger best"), std::string::npos) << text;
}

TEST(WriteComparison, ReportsDisagreement) {
  const auto p = oracle::fixture_problem();
  const auto r = rank(p);
  auto summary = fixture_matching(p, r);
  std::swap(summary.rows[0].alternative, summary.rows[1].alternative);
  const auto text = write_comparison(r, summary);
  EXPECT_NE(text.find("Top pair: c1-p3\n"), std::string::npos);
  EXPECT_NE(text.find("Disagreement:"), std::string::npos);
}

TEST(SummarizeMatching, HeaviestCriterionFirst) {
  DecisionProblem p;
  p.criteria.push_back({"light", "", "", Direction::IncreaseDesired, 0, 1, 0.3});
  p.criteria.push_back({"heavy", "", "", Direction::IncreaseDesired, 0, 1, 0.7});
  p.alternatives.push_back({"x", "", {{"light", 0.2}, {"heavy", 0.9}}});
  p.alternatives.push_back({"y", "", {{"light", 0.8}, {"heavy", 0.1}}});
  const auto r = rank(p);
  const auto s = fixture_matching(p, r);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.rows[0].criterion, "heavy");
  EXPECT_EQ(s.rows[0].alternative, "x");
  EXPECT_NEAR(s.rows[0].total, r.total("x"), 0);
}
