#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sml {

/// Base class for errors raised on invalid domain input (bad parameters,
/// violated preconditions, values outside the representable range).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's stated hypothesis does not hold for its input.
/// Kept distinct from a negative answer so callers can tell the two apart.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed graph6 input. `line()` is 1-based when the error came from a
/// stream, 0 otherwise.
class ParseError : public DomainError {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : DomainError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sml
