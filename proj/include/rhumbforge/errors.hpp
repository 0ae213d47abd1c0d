#pragma once

#include <stdexcept>
#include <string>

namespace rhumbforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed parameters, configs, angles out of range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t position)
      : ParseError("unknown identifier '" + name + "'", position), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A surface that fails its sampled regularity checks.
class IrregularSurface : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failures: everything the CLI maps to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Function evaluated outside its domain (ln, sqrt, tan poles, division by 0).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation overflowed to a non-finite value.
class EvaluationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Numerical failure tied to a point (x, y) of the parameter domain.
class PointError : public NumericalError {
 public:
  PointError(const std::string& kind, const std::string& what, double x,
             double y)
      : NumericalError(kind + ": " + what + " at (x, y) = (" +
                       std::to_string(x) + ", " + std::to_string(y) + ")"),
        kind_(kind),
        x_(x),
        y_(y) {}
  const std::string& kind() const noexcept { return kind_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  std::string kind_;
  double x_;
  double y_;
};

/// The loxodrome quadratic degenerates (its leading coefficient vanishes).
class SingularDenominator : public PointError {
 public:
  SingularDenominator(double x, double y)
      : PointError("SingularDenominator", "loxodrome slope denominator vanishes",
                   x, y) {}
};

/// g11 g22 - g12^2 <= 0: the tangent vectors are dependent.
class IrregularPoint : public PointError {
 public:
  IrregularPoint(double x, double y)
      : PointError("IrregularPoint", "metric determinant is not positive", x,
                   y) {}
};

class NoBracket : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised by require_complete() when an integration stopped early.
class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rhumbforge
