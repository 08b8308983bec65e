#pragma once

// Minimal RFC 4180 reader and writer with source positions, plus
// locale-independent number conversion.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bellinger/error.hpp"

namespace bellinger::csv {

struct Field {
  std::string text;
  std::size_t column = 0;  // 1-based character column where the field starts
};

struct Record {
  std::size_t line = 0;  // 1-based
  std::vector<Field> fields;
};

/// Splits `text` into records. Blank lines are skipped; quoted fields may
/// contain commas, doubled quotes and newlines. Accepts "\n" and "\r\n".
inline std::vector<Record> parse(std::string_view text, const std::string& file) {
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t pos = 0;

  // Strip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

  while (pos < text.size()) {
    Record record;
    record.line = line;
    bool end_of_record = false;
    while (!end_of_record) {
      Field field;
      field.column = column;
      if (pos < text.size() && text[pos] == '"') {
        const auto open_line = line;
        const auto open_column = column;
        ++pos;
        ++column;
        bool closed = false;
        while (pos < text.size()) {
          const char ch = text[pos];
          if (ch == '"') {
            if (pos + 1 < text.size() && text[pos + 1] == '"') {
              field.text += '"';
              pos += 2;
              column += 2;
              continue;
            }
            ++pos;
            ++column;
            closed = true;
            break;
          }
          field.text += ch;
          ++pos;
          if (ch == '\n') {
            ++line;
            column = 1;
          } else {
            ++column;
          }
        }
        if (!closed) throw ParseError(file, open_line, open_column, "unterminated quoted field");
        if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
            text[pos] != '\r') {
          throw ParseError(file, line, column, "unexpected character after closing quote");
        }
      } else {
        while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
               text[pos] != '\r') {
          field.text += text[pos++];
          ++column;
        }
      }
      record.fields.push_back(std::move(field));

      if (pos >= text.size()) {
        end_of_record = true;
      } else if (text[pos] == ',') {
        ++pos;
        ++column;
      } else {
        if (text[pos] == '\r') ++pos;
        if (pos < text.size() && text[pos] == '\n') ++pos;
        ++line;
        column = 1;
        end_of_record = true;
      }
    }
    const bool blank = record.fields.size() == 1 &&
                       record.fields[0].text.find_first_not_of(" \t") ==
                           std::string::npos;
    if (!blank) records.push_back(std::move(record));
  }
  return records;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

/// Parses a whole field as a finite double using '.' as decimal separator.
inline std::optional<double> to_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

/// Shortest text that reads back as exactly `value`.
inline std::string format_exact(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

/// `value` with at most `significant` significant digits, trailing zeros
/// dropped.
inline std::string format_general(double value, int significant = 12) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value,
                                 std::chars_format::general, significant);
  return std::string(buffer, ptr);
}

inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  out += '\n';
  return out;
}

}  // namespace bellinger::csv
