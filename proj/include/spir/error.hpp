#pragma once

#include <stdexcept>
#include <string>

namespace spir {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document. Carries the 1-based line the problem was found on
// (0 when the problem is not tied to a single line).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// An exhaustive enumeration would exceed the configured outcome budget.
class EnumerationLimitError : public Error {
 public:
  EnumerationLimitError(long long required, long long limit)
      : Error("enumeration size " + std::to_string(required) +
              " exceeds the limit of " + std::to_string(limit) + " outcomes"),
        required_(required),
        limit_(limit) {}

  long long required() const { return required_; }
  long long limit() const { return limit_; }

 private:
  long long required_;
  long long limit_;
};

}  // namespace spir
