#pragma once

// CSV carriers for decision problems.
//
//   criteria.csv      id,name,unit,direction,lower,upper,weight
//                     direction is "max" (increase desired) or "min"
//   alternatives.csv  id,name,<one column per criterion id>
//
// Columns are located by header name, so their order is free. Row order is
// declaration order for every downstream table.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bellinger/csv.hpp"
#include "bellinger/error.hpp"
#include "bellinger/model.hpp"

namespace bellinger {

struct ProblemFiles {
  std::string criteria_path;
  std::string alternatives_path;
};

struct LoadOptions {
  bool clamp = false;
  double weight_sum_tolerance = kDefaultWeightSumTolerance;
};

namespace detail {

struct HeaderIndex {
  std::map<std::string, std::size_t> column_of;
  std::vector<std::string> names;  // in file order
};

inline HeaderIndex read_header(const csv::Record& header, const std::string& file) {
  HeaderIndex index;
  for (std::size_t k = 0; k < header.fields.size(); ++k) {
    const std::string name(csv::trim(header.fields[k].text));
    if (name.empty()) {
      throw ParseError(file, header.line, header.fields[k].column, "empty column name");
    }
    if (!index.column_of.emplace(name, k).second) {
      throw ParseError(file, header.line, header.fields[k].column,
                       "duplicate column " + name);
    }
    index.names.push_back(name);
  }
  return index;
}

inline void require_columns(const HeaderIndex& index, const csv::Record& header,
                            const std::string& file,
                            const std::vector<std::string>& required) {
  for (const auto& name : required) {
    if (!index.column_of.count(name)) {
      throw ParseError(file, header.line, 0, "missing column " + name);
    }
  }
}

inline void check_width(const csv::Record& row, const HeaderIndex& index,
                        const std::string& file) {
  if (row.fields.size() != index.names.size()) {
    throw ParseError(file, row.line, 0,
                     "expected " + std::to_string(index.names.size()) +
                         " fields, found " + std::to_string(row.fields.size()));
  }
}

inline std::string text_at(const csv::Record& row, std::size_t k) {
  return std::string(csv::trim(row.fields[k].text));
}

inline double number_at(const csv::Record& row, std::size_t k,
                        const std::string& column, const std::string& file) {
  auto value = csv::to_number(row.fields[k].text);
  if (!value) {
    throw ParseError(file, row.line, row.fields[k].column,
                     "non-numeric value '" + text_at(row, k) + "' in column " + column);
  }
  return *value;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

inline std::vector<Criterion> parse_criteria(std::string_view text,
                                             const std::string& file) {
  const auto records = csv::parse(text, file);
  std::vector<Criterion> out;
  if (records.empty()) return out;

  const auto& header = records.front();
  const auto index = detail::read_header(header, file);
  static const std::vector<std::string> kColumns = {
      "id", "name", "unit", "direction", "lower", "upper", "weight"};
  detail::require_columns(index, header, file, kColumns);
  for (std::size_t k = 0; k < index.names.size(); ++k) {
    if (std::find(kColumns.begin(), kColumns.end(), index.names[k]) == kColumns.end()) {
      throw ParseError(file, header.line, header.fields[k].column,
                       "unexpected column " + index.names[k]);
    }
  }
  auto col = [&](const char* name) { return index.column_of.at(name); };

  std::set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    detail::check_width(row, index, file);
    Criterion c;
    c.id = detail::text_at(row, col("id"));
    if (c.id.empty()) {
      throw ParseError(file, row.line, row.fields[col("id")].column, "empty criterion id");
    }
    if (!seen.insert(c.id).second) {
      throw ParseError(file, row.line, row.fields[col("id")].column,
                       "duplicate criterion id " + c.id);
    }
    c.name = detail::text_at(row, col("name"));
    c.unit = detail::text_at(row, col("unit"));
    const auto token = detail::text_at(row, col("direction"));
    const auto direction = parse_direction(token);
    if (!direction) {
      throw ParseError(file, row.line, row.fields[col("direction")].column,
                       "unknown direction '" + token + "' (expected max or min)");
    }
    c.direction = *direction;
    c.lower = detail::number_at(row, col("lower"), "lower", file);
    c.upper = detail::number_at(row, col("upper"), "upper", file);
    c.weight = detail::number_at(row, col("weight"), "weight", file);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Alternative> parse_alternatives(
    std::string_view text, const std::string& file,
    const std::vector<Criterion>& criteria) {
  const auto records = csv::parse(text, file);
  std::vector<Alternative> out;
  if (records.empty()) return out;

  const auto& header = records.front();
  const auto index = detail::read_header(header, file);
  std::vector<std::string> required = {"id", "name"};
  for (const auto& c : criteria) required.push_back(c.id);
  detail::require_columns(index, header, file, required);
  for (std::size_t k = 0; k < index.names.size(); ++k) {
    if (std::find(required.begin(), required.end(), index.names[k]) == required.end()) {
      throw ParseError(file, header.line, header.fields[k].column,
                       "column " + index.names[k] + " is not a declared criterion");
    }
  }
  const auto id_col = index.column_of.at("id");
  const auto name_col = index.column_of.at("name");

  std::set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    detail::check_width(row, index, file);
    Alternative a;
    a.id = detail::text_at(row, id_col);
    if (a.id.empty()) {
      throw ParseError(file, row.line, row.fields[id_col].column, "empty alternative id");
    }
    if (!seen.insert(a.id).second) {
      throw ParseError(file, row.line, row.fields[id_col].column,
                       "duplicate alternative id " + a.id);
    }
    a.name = detail::text_at(row, name_col);
    for (const auto& c : criteria) {
      a.values[c.id] = detail::number_at(row, index.column_of.at(c.id), c.id, file);
    }
    out.push_back(std::move(a));
  }
  return out;
}

/// Builds and validates a problem from in-memory CSV text. With clamping
/// enabled, a problem whose only violations are out-of-range values has those
/// values snapped to the nearest bound; anything else throws ValidationError.
inline DecisionProblem parse_problem(std::string_view criteria_text,
                                     std::string_view alternatives_text,
                                     const ProblemFiles& names,
                                     const LoadOptions& options = {}) {
  DecisionProblem problem;
  problem.weight_sum_tolerance = options.weight_sum_tolerance;
  problem.criteria = parse_criteria(criteria_text, names.criteria_path);
  problem.alternatives =
      parse_alternatives(alternatives_text, names.alternatives_path, problem.criteria);

  auto report = validate_problem(problem);
  if (report.ok()) return problem;
  if (options.clamp && report.only_range_violations()) {
    problem = clamp_values(std::move(problem));
    report = validate_problem(problem);
    if (report.ok()) return problem;
  }
  throw ValidationError(std::move(report));
}

inline DecisionProblem load_problem(const ProblemFiles& files,
                                    const LoadOptions& options = {}) {
  return parse_problem(detail::read_file(files.criteria_path),
                       detail::read_file(files.alternatives_path), files, options);
}

inline std::string write_criteria_csv(const DecisionProblem& problem) {
  std::string out =
      csv::join_row({"id", "name", "unit", "direction", "lower", "upper", "weight"});
  for (const auto& c : problem.criteria) {
    out += csv::join_row({c.id, c.name, c.unit, std::string(to_string(c.direction)),
                          csv::format_exact(c.lower), csv::format_exact(c.upper),
                          csv::format_exact(c.weight)});
  }
  return out;
}

inline std::string write_alternatives_csv(const DecisionProblem& problem) {
  std::vector<std::string> header = {"id", "name"};
  for (const auto& c : problem.criteria) header.push_back(c.id);
  std::string out = csv::join_row(header);
  for (const auto& a : problem.alternatives) {
    std::vector<std::string> row = {a.id, a.name};
    for (const auto& c : problem.criteria) row.push_back(csv::format_exact(a.values.at(c.id)));
    out += csv::join_row(row);
  }
  return out;
}

}  // namespace bellinger
