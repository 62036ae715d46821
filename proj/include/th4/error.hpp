#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace th4 {

/// Malformed input text. Carries the 1-based physical line number when known
/// and, once attached, the name of the source it came from.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& detail, std::size_t line = 0, const std::string& source = {})
      : std::runtime_error(render(detail, line, source)), detail_(detail), line_(line) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string render(const std::string& detail, std::size_t line, const std::string& source) {
    std::string out = source.empty() ? std::string() : source + ": ";
    if (line) out += "line " + std::to_string(line) + ": ";
    return out + detail;
  }

  std::string detail_;
  std::size_t line_;
};

/// Input contained no cases after blank lines were skipped.
class EmptyDatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments outside an operation's domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative fit stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double max_margin_error)
      : std::runtime_error(what), max_margin_error_(max_margin_error) {}

  double max_margin_error() const noexcept { return max_margin_error_; }

 private:
  double max_margin_error_;
};

}  // namespace th4
