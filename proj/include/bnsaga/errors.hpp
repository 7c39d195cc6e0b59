#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bnsaga {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  /// 1-based line number, 0 when the error concerns the whole stream.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative method gave up; carries its last estimate.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

/// Combinatorial enumeration would exceed its budget.
class IntractableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bnsaga
