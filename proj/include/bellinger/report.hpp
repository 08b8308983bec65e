#pragma once

// Rendering of rankings, matchings and sensitivity reports as aligned text,
// JSON or CSV. All number formatting is locale-independent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bellinger/csv.hpp"
#include "bellinger/error.hpp"
#include "bellinger/matching.hpp"
#include "bellinger/ranking.hpp"
#include "bellinger/sensitivity.hpp"

namespace bellinger {

enum class Format { Table, Json, Csv };
enum class Scale { Percent, Unit };

inline std::optional<Format> parse_format(std::string_view token) {
  if (token == "table") return Format::Table;
  if (token == "json") return Format::Json;
  if (token == "csv") return Format::Csv;
  return std::nullopt;
}

inline std::optional<Scale> parse_scale(std::string_view token) {
  if (token == "percent") return Scale::Percent;
  if (token == "unit") return Scale::Unit;
  return std::nullopt;
}

inline constexpr int kMaxPrecision = 12;
inline constexpr double kTieNudge = 8 * std::numeric_limits<double>::epsilon();

struct ReportOptions {
  Format format = Format::Table;
  int precision = 2;
  Scale scale = Scale::Percent;
};

/// Round half up (away from zero) to `precision` decimals. A nudge of a few
/// ulps makes decimal ties such as 0.02525 round up even when their binary
/// value sits just below the tie.
inline std::string format_fixed(double value, int precision) {
  precision = std::clamp(precision, 0, kMaxPrecision);
  if (!std::isfinite(value)) return value != value ? "nan" : (value < 0 ? "-inf" : "inf");
  const double scaled = std::fabs(value) * std::pow(10.0, precision);
  if (scaled >= 9.0e15) return csv::format_exact(value);
  const auto digits_value =
      static_cast<std::uint64_t>(std::floor(scaled + scaled * kTieNudge + 0.5));
  std::string digits = std::to_string(digits_value);
  if (precision > 0) {
    if (digits.size() <= static_cast<std::size_t>(precision)) {
      digits.insert(0, static_cast<std::size_t>(precision) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(precision), 1, '.');
  }
  if (value < 0 && digits_value != 0) digits.insert(0, 1, '-');
  return digits;
}

/// Monospace table: columns separated by two spaces, numbers right-aligned,
/// no trailing whitespace.
class TextTable {
 public:
  enum class Align { Left, Right };

  explicit TextTable(std::vector<Align> align) : align_(std::move(align)) {}

  void add_row(std::vector<std::string> cells) {
    cells.resize(align_.size());
    rows_.push_back(std::move(cells));
  }

  std::string render() const {
    std::vector<std::size_t> width(align_.size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) line += "  ";
        const auto pad = width[c] - row[c].size();
        if (align_[c] == Align::Right) line.append(pad, ' ');
        line += row[c];
        if (align_[c] == Align::Left) line.append(pad, ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      out += line;
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<Align> align_;
  std::vector<std::vector<std::string>> rows_;
};

struct MatchRow {
  std::string criterion;
  double weight = 0.0;
  std::string alternative;
  double total = 0.0;  // percent scale
};

/// A matching laid out as weight / criterion / position / total rows,
/// heaviest criterion first.
struct MatchingSummary {
  Side proposers = Side::A;
  PreferenceStrategy strategy = PreferenceStrategy::RatingsByWeight;
  std::vector<MatchRow> rows;
};

inline std::string_view proposer_label(Side s) {
  return s == Side::A ? "criteria" : "alternatives";
}

inline MatchingSummary summarize_matching(const RankingResult& ranking,
                                          const PreferenceProfile& profile,
                                          const Matching& matching,
                                          PreferenceStrategy strategy) {
  MatchingSummary summary{matching.proposers, strategy, {}};
  for (const auto& [a, b] : pairs(profile, matching)) {
    const auto ci = static_cast<std::size_t>(
        std::find(ranking.criterion_ids.begin(), ranking.criterion_ids.end(), a) -
        ranking.criterion_ids.begin());
    if (ci == ranking.criterion_ids.size()) throw Error("unknown criterion " + a);
    summary.rows.push_back({a, ranking.weights[ci], b, ranking.total(b)});
  }
  std::stable_sort(summary.rows.begin(), summary.rows.end(),
                   [](const MatchRow& x, const MatchRow& y) { return x.weight > y.weight; });
  return summary;
}

namespace detail {

inline double scaled_total(double percent, Scale scale) {
  return scale == Scale::Percent ? percent : percent / kPercentScale;
}

inline std::string_view scale_label(Scale scale) {
  return scale == Scale::Percent ? "percent" : "unit";
}

struct NamedTable {
  std::string name;
  std::vector<std::vector<std::string>> rows;  // first row is the header
};

// Table contents shared by the text and CSV renderers.
inline std::vector<NamedTable> report_tables(const RankingResult& r,
                                             const std::optional<MatchingSummary>& m,
                                             const ReportOptions& o) {
  const int p = o.precision;
  std::vector<NamedTable> tables;

  NamedTable normalized{"normalized", {}};
  std::vector<std::string> header = {"criterion"};
  header.insert(header.end(), r.alternative_ids.begin(), r.alternative_ids.end());
  normalized.rows.push_back(header);
  NamedTable weighted{"weighted", {}};
  std::vector<std::string> wheader = {"weight", "criterion"};
  wheader.insert(wheader.end(), r.alternative_ids.begin(), r.alternative_ids.end());
  weighted.rows.push_back(wheader);
  for (std::size_t i = 0; i < r.criterion_ids.size(); ++i) {
    std::vector<std::string> nrow = {r.criterion_ids[i]};
    std::vector<std::string> wrow = {csv::format_exact(r.weights[i]), r.criterion_ids[i]};
    for (std::size_t j = 0; j < r.alternative_ids.size(); ++j) {
      nrow.push_back(format_fixed(r.normalized.entries(i, j), p));
      wrow.push_back(format_fixed(r.weighted.entries(i, j), p + 1));
    }
    normalized.rows.push_back(std::move(nrow));
    weighted.rows.push_back(std::move(wrow));
  }
  tables.push_back(std::move(normalized));
  tables.push_back(std::move(weighted));

  NamedTable totals{"totals", {{"rank", "variant", "total"}}};
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    const auto j = r.order[k];
    totals.rows.push_back({std::to_string(k + 1), r.alternative_ids[j],
                           format_fixed(scaled_total(r.totals[j], o.scale), p)});
  }
  tables.push_back(std::move(totals));

  if (m) {
    NamedTable matching{"matching", {{"weight", "criterion", "position", "total"}}};
    for (const auto& row : m->rows) {
      matching.rows.push_back({csv::format_exact(row.weight), row.criterion, row.alternative,
                               format_fixed(scaled_total(row.total, o.scale), p)});
    }
    tables.push_back(std::move(matching));
  }
  return tables;
}

inline std::string render_text_table(const NamedTable& t, std::size_t text_columns) {
  std::vector<TextTable::Align> align;
  for (std::size_t c = 0; c < t.rows.front().size(); ++c) {
    align.push_back(c < text_columns ? TextTable::Align::Left : TextTable::Align::Right);
  }
  TextTable table(std::move(align));
  for (const auto& row : t.rows) table.add_row(row);
  return table.render();
}

inline std::string render_table(const RankingResult& r,
                                const std::optional<MatchingSummary>& m,
                                const ReportOptions& o) {
  const auto tables = report_tables(r, m, o);
  std::string out;
  out += "Normalized values (fraction of path)\n";
  out += render_text_table(tables[0], 1);
  out += "\nWeighted values\n";
  {
    // weight column is numeric but sits left of the criterion label
    std::vector<TextTable::Align> align = {TextTable::Align::Right, TextTable::Align::Left};
    align.resize(tables[1].rows.front().size(), TextTable::Align::Right);
    TextTable table(std::move(align));
    for (const auto& row : tables[1].rows) table.add_row(row);
    out += table.render();
  }
  out += "\nTotal ratings (";
  out += scale_label(o.scale);
  out += ")\n";
  out += render_text_table(tables[2], 2);
  out += "\nBest variant: " + r.best + "\n";
  if (m) {
    out += "\nMatching (";
    out += proposer_label(m->proposers);
    out += " propose, ";
    out += to_string(m->strategy);
    out += ")\n";
    std::vector<TextTable::Align> align = {TextTable::Align::Right, TextTable::Align::Left,
                                           TextTable::Align::Left, TextTable::Align::Right};
    TextTable table(std::move(align));
    for (const auto& row : tables[3].rows) table.add_row(row);
    out += table.render();
  }
  return out;
}

}  // namespace detail

/// Full-precision JSON document of a ranking and optional matching.
inline nlohmann::ordered_json report_json(const RankingResult& r,
                                          const std::optional<MatchingSummary>& m,
                                          Scale scale = Scale::Percent) {
  using nlohmann::ordered_json;
  auto matrix = [](const Matrix& x) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const auto row = x.row(i);
      rows.push_back(ordered_json(std::vector<double>(row.begin(), row.end())));
    }
    return rows;
  };
  ordered_json doc;
  doc["scale"] = detail::scale_label(scale);
  doc["criteria"] = r.criterion_ids;
  doc["weights"] = r.weights;
  doc["alternatives"] = r.alternative_ids;
  doc["normalized"] = matrix(r.normalized.entries);
  doc["weighted"] = matrix(r.weighted.entries);
  ordered_json totals = ordered_json::object();
  for (std::size_t j = 0; j < r.alternative_ids.size(); ++j) {
    totals[r.alternative_ids[j]] = detail::scaled_total(r.totals[j], scale);
  }
  doc["totals"] = totals;
  doc["order"] = r.order_ids();
  doc["best"] = r.best;
  if (m) {
    ordered_json match;
    match["proposers"] = proposer_label(m->proposers);
    match["strategy"] = to_string(m->strategy);
    ordered_json pairs_json = ordered_json::array();
    for (const auto& row : m->rows) {
      pairs_json.push_back({{"criterion", row.criterion},
                            {"alternative", row.alternative},
                            {"weight", row.weight},
                            {"total", detail::scaled_total(row.total, scale)}});
    }
    match["pairs"] = pairs_json;
    doc["matching"] = match;
  }
  return doc;
}

/// One CSV document per table: normalized, weighted, totals and, when a
/// matching is given, matching.
inline std::vector<std::pair<std::string, std::string>> report_csv_files(
    const RankingResult& r, const std::optional<MatchingSummary>& m,
    const ReportOptions& o) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& t : detail::report_tables(r, m, o)) {
    std::string text;
    for (const auto& row : t.rows) text += csv::join_row(row);
    files.emplace_back(t.name + ".csv", std::move(text));
  }
  return files;
}

inline std::string write_report(const RankingResult& ranking,
                                const std::optional<MatchingSummary>& matching,
                                const ReportOptions& options = {}) {
  switch (options.format) {
    case Format::Json:
      return report_json(ranking, matching, options.scale).dump(2) + "\n";
    case Format::Csv: {
      std::string out;
      bool first = true;
      for (const auto& [name, text] : report_csv_files(ranking, matching, options)) {
        if (!first) out += '\n';
        first = false;
        out += "# " + name + "\n" + text;
      }
      return out;
    }
    case Format::Table:
      break;
  }
  return detail::render_table(ranking, matching, options);
}

/// Bellinger winner next to the deferred-acceptance matching, with a verdict
/// on whether the heaviest criterion is paired with the Bellinger winner.
inline std::string write_comparison(const RankingResult& ranking,
                                    const MatchingSummary& matching, int precision = 2) {
  std::string out;
  out += "Bellinger best variant: " + ranking.best + " (" +
         format_fixed(ranking.total(ranking.best), precision) + ")\n";
  out += "\nGale-Shapley matching (";
  out += proposer_label(matching.proposers);
  out += " propose, ";
  out += to_string(matching.strategy);
  out += ")\n";
  TextTable table({TextTable::Align::Right, TextTable::Align::Left, TextTable::Align::Left,
                   TextTable::Align::Right, TextTable::Align::Left});
  table.add_row({"weight", "criterion", "position", "total", ""});
  for (const auto& row : matching.rows) {
    table.add_row({csv::format_exact(row.weight), row.criterion, row.alternative,
                   format_fixed(row.total, precision),
                   row.alternative == ranking.best ? "<- Bellinger best" : ""});
  }
  out += table.render();
  if (!matching.rows.empty()) {
    const auto& top = matching.rows.front();
    out += "\nTop pair: " + top.criterion + "-" + top.alternative + "\n";
    out += top.alternative == ranking.best
               ? "Agreement: the top-weight criterion " + top.criterion +
                     " is matched with the Bellinger best variant " + ranking.best + "\n"
               : "Disagreement: the top-weight criterion " + top.criterion +
                     " is matched with " + top.alternative +
                     ", the Bellinger best variant is " + ranking.best + "\n";
  }
  return out;
}

inline std::string write_sensitivity(const SensitivityReport& s) {
  std::string out;
  out += "Weight sensitivity\n";
  out += "base best: " + s.base_best + "\n";
  out += "delta: " + csv::format_general(s.delta) + "\n";
  out += "samples: " + std::to_string(s.samples) + "\n";
  out += "seed: " + std::to_string(s.seed) + "\n";
  out += "\nWinner histogram\n";
  TextTable table({TextTable::Align::Left, TextTable::Align::Right, TextTable::Align::Right});
  table.add_row({"variant", "wins", "share"});
  for (const auto& id : s.alternative_ids) {
    const auto wins = s.winner_histogram.at(id);
    table.add_row({id, std::to_string(wins),
                   format_fixed(static_cast<double>(wins) / static_cast<double>(s.samples), 4)});
  }
  out += table.render();
  out += "\nmin flip delta: ";
  out += s.min_flip_delta ? csv::format_general(*s.min_flip_delta) : std::string("none found");
  out += " (probed";
  for (double d : s.flip_ladder) out += " " + csv::format_general(d);
  out += ")\n";
  out += "rank concordance: mean " + format_fixed(s.mean_correlation(), 4) + ", min " +
         format_fixed(s.min_correlation(), 4) + "\n";
  return out;
}

}  // namespace bellinger
