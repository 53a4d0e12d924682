#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modstat {

// Argument outside the mathematical domain of an operation (negative x, n = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a documented precondition (bad grid, bounded modulus, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The input does not satisfy the mathematical precondition of an algorithm
// (for example, the sequence is not statistically convergent to the given limit).
class PreconditionFailed : public UsageError {
 public:
  using UsageError::UsageError;
};

// A constructive algorithm could not complete inside the finite horizon.
class ConstructionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modstat
