#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lenscert {

/// Base class for every error raised by the library. Verification
/// failures are not errors; they are reported through VerificationReport.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Structurally invalid triangulation data (involution violated, face glued
/// to itself, index out of range, disconnected input).
class TriangulationError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic precondition violated (division by zero, non-prime modulus,
/// search ceiling exceeded).
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Precondition on a mathematical object violated (bad triangle type,
/// unmapped generator, field mismatch).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace lenscert
