#pragma once

#include <string>
#include <string_view>

#include "rhumbforge/numerics.hpp"
#include "rhumbforge/surface.hpp"

namespace rhumbforge {

/// Which coordinate curves the loxodrome cuts at a constant angle.
enum class Family {
  Meridian,  // curves y = const; slope dy/dx, independent variable x
  Parallel,  // curves x = const; slope dx/dy, independent variable y
};

/// Sign taken for the square-root term of the quadratic's root.
enum class Branch { Minus, Plus };

constexpr Branch flipped(Branch b) { return b == Branch::Minus ? Branch::Plus : Branch::Minus; }

std::string_view to_string(Family f);
std::string_view to_string(Branch b);
Family parse_family(std::string_view s);  // "meridian" | "parallel"
Branch parse_branch(std::string_view s);  // "minus" | "plus"

/// Throws ValidationError unless 0 < angle < pi.
void check_angle(double angle);

/// A loxodrome request.
///
/// `angle` is phi (against meridians) or theta (against parallels). The
/// curve passes through `start` = (x0, y0) and is integrated over `span`, an
/// interval of the independent variable (x for meridians, y for parallels)
/// that contains the start's independent coordinate.
struct LoxodromeSpec {
  Family family = Family::Meridian;
  double angle = 0.25 * std::numbers::pi;
  Branch branch = Branch::Minus;
  double x0 = 0.0;
  double y0 = 0.0;
  Interval span;
  IntegratorConfig tolerances = default_integrator_config();

  double u0() const { return family == Family::Meridian ? x0 : y0; }
  double v0() const { return family == Family::Meridian ? y0 : x0; }

  /// Angle range, start inside the surface's domains, span inside the
  /// independent variable's domain and containing u0, valid tolerances.
  void validate(const TwistedSurface& s) const;
};

/// |den| below this fraction of g11 g22 is reported as SingularDenominator.
inline constexpr double kSingularDenominatorRatio = 1e-12;

/// dy/dx of a curve cutting the meridians at angle phi:
///
///   dy/dx = (-2 g11 g12 sin^2 phi -/+ g11 sqrt(det) sin 2phi)
///           / (2 (g12^2 - g11 g22 cos^2 phi))
///
/// Branch::Minus takes the upper sign. The metric overload reports (x, y)
/// in its errors purely for diagnostics.
double meridian_slope(const MetricCoeffs& m, double phi, Branch branch, double x = 0.0,
                      double y = 0.0);
double meridian_slope(const TwistedSurface& s, double x, double y, double phi,
                      Branch branch = Branch::Minus);

/// dx/dy of a curve cutting the parallels at angle theta:
///
///   dx/dy = (-2 g12 g22 sin^2 theta -/+ g22 sqrt(det) sin 2theta)
///           / (2 (g12^2 - g11 g22 cos^2 theta))
double parallel_slope(const MetricCoeffs& m, double theta, Branch branch, double x = 0.0,
                      double y = 0.0);
double parallel_slope(const TwistedSurface& s, double x, double y, double theta,
                      Branch branch = Branch::Minus);

/// Dispatches on family; the slope is dv/du in that family's variables.
double slope(Family family, const MetricCoeffs& m, double angle, Branch branch, double x = 0.0,
             double y = 0.0);

/// Cosine of the angle between the direction (du, dv) = (1, slope) and the
/// family's coordinate curve (T_x for meridians, T_y for parallels). NaN
/// when the direction has zero length in the metric.
double cut_cosine(Family family, const MetricCoeffs& m, double slope);

/// Residual of the defining quadratic at `slope` and the sum of the absolute
/// values of its three terms (for a relative residual).
struct QuadraticResidual {
  double residual;
  double scale;
};
QuadraticResidual quadratic_residual(Family family, const MetricCoeffs& m, double angle,
                                     double slope);

}  // namespace rhumbforge
