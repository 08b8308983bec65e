#pragma once

#include <stdexcept>
#include <string>

namespace bellinger {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries a 1-based line and column; column 0 means
/// the whole line (or the whole file when line is 0).
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column,
             const std::string& what)
      : Error(format(file, line, column, what)),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& file, std::size_t line,
                            std::size_t column, const std::string& what) {
    std::string out = file;
    if (line > 0) {
      out += ':' + std::to_string(line);
      if (column > 0) out += ':' + std::to_string(column);
    }
    return out + ": " + what;
  }

  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace bellinger
