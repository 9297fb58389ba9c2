#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sensmatch {

// Invalid arguments are reported with std::invalid_argument throughout.

/// Malformed edge-list input. line() is 1-based; 0 means "end of input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A vertex or edge that the operation expected to find is absent.
class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The configured work budget would be exceeded (approximation driver).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size guard rejected the instance (exact oracles, degree bounds).
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sensmatch
