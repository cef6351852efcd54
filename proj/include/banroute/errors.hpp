#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace banroute {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or query text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid instance, query, route or parameter set.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured iteration or piece-count cap was hit before the search finished.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The time-expanded oracle refuses instances above its state budget.
class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (a bug, not a user error).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace banroute
