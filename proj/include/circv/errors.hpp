#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the expression parser; carries the byte offset of the problem.
class ParseError : public Error {
public:
  enum class Kind { Syntax, UnknownIdentifier, Arity };

  ParseError(Kind kind, std::size_t offset, const std::string& message)
      : Error(message + " (offset " + std::to_string(offset) + ")"),
        kind(kind),
        offset(offset) {}

  Kind kind;
  std::size_t offset;
};

/// Raised when an evaluation leaves the real domain of a subexpression
/// (log of a non-positive value, sqrt of a negative, division by zero,
/// non-integer power of a non-positive base).
class DomainError : public Error {
public:
  DomainError(std::string subexpression, const std::string& message)
      : Error(message + " in '" + subexpression + "'"),
        subexpression(std::move(subexpression)) {}

  std::string subexpression;
};

class SingularMatrixError : public Error {
public:
  explicit SingularMatrixError(double determinant)
      : Error("matrix is numerically singular (det = " +
              std::to_string(determinant) + ")"),
        determinant(determinant) {}

  double determinant;
};

/// Rank-4 tensor used with the wrong variance flag.
class VarianceError : public Error {
public:
  using Error::Error;
};

/// A guard expression dipped below the scenario margin, or the point left
/// the domain box.
class GuardError : public Error {
public:
  using Error::Error;
};

/// The metric ordering A > B > 0 failed at a point.
class OrderingError : public Error {
public:
  using Error::Error;
};

/// Scenario file or builtin-family parameters are invalid.
class ScenarioError : public Error {
public:
  using Error::Error;
};

/// A theorem precondition does not hold for the supplied input.
class PremiseError : public Error {
public:
  using Error::Error;
};

/// The two vectors handed to the sectional curvature span no 2-plane.
class DegeneratePlaneError : public Error {
public:
  using Error::Error;
};

/// Rejection sampling could not find enough admissible points.
class SamplingError : public Error {
public:
  using Error::Error;
};

}  // namespace circv
