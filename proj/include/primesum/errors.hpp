#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primesum {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An arithmetic input or intermediate value left the supported 64-bit range.
class DomainOverflowError : public Error {
 public:
  explicit DomainOverflowError(const std::string& what) : Error(what) {}
};

// Element counts or row shapes do not match the declared kind/order.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

// Invalid option combination or out-of-range parameter.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// A proof-style routine ran out of budget before reaching a verdict.
class InconclusiveError : public Error {
 public:
  explicit InconclusiveError(const std::string& what) : Error(what) {}
};

// Malformed document input; carries 1-based line and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace primesum
