#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amsolve {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverseError : public Error {
 public:
  ZeroInverseError() : Error("inverse of zero in prime field") {}
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomialError : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic problem in a `.sys` or template file. Line and column
/// are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class PositiveDimensionalError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class SpanFailureError : public Error {
 public:
  using Error::Error;
};

class TemplateCapError : public Error {
 public:
  using Error::Error;
};

/// Elimination lost rank: non-generic Z_p instance or near-degenerate float
/// instance.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// A numeric equation has a monomial that the template does not list.
class SupportMismatchError : public Error {
 public:
  using Error::Error;
};

class ExtractionError : public Error {
 public:
  using Error::Error;
};

class DistortionInfeasibleError : public Error {
 public:
  using Error::Error;
};

class DegenerateSceneError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace amsolve
