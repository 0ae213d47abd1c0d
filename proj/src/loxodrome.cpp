#include "rhumbforge/loxodrome.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rhumbforge {

std::string_view to_string(Family f) { return f == Family::Meridian ? "meridian" : "parallel"; }

std::string_view to_string(Branch b) { return b == Branch::Minus ? "minus" : "plus"; }

Family parse_family(std::string_view s) {
  if (s == "meridian") return Family::Meridian;
  if (s == "parallel") return Family::Parallel;
  throw ValidationError("unknown family '" + std::string(s) + "' (meridian|parallel)");
}

Branch parse_branch(std::string_view s) {
  if (s == "minus") return Branch::Minus;
  if (s == "plus") return Branch::Plus;
  throw ValidationError("unknown branch '" + std::string(s) + "' (minus|plus)");
}

void check_angle(double angle) {
  if (!(angle > 0.0 && angle < std::numbers::pi)) {
    throw ValidationError("angle must lie in (0, pi), got " + std::to_string(angle));
  }
}

void LoxodromeSpec::validate(const TwistedSurface& s) const {
  check_angle(angle);
  tolerances.validate();
  if (!s.x_domain().contains(x0) || !s.y_domain().contains(y0)) {
    throw ValidationError("loxodrome start lies outside the surface domain");
  }
  if (!span.valid()) throw ValidationError("loxodrome span must be a finite [lo, hi]");
  const Interval& u_domain = family == Family::Meridian ? s.x_domain() : s.y_domain();
  if (!u_domain.contains(span.lo) || !u_domain.contains(span.hi)) {
    throw ValidationError("loxodrome span leaves the surface domain of the independent variable");
  }
  if (!span.contains(u0())) {
    throw ValidationError("loxodrome span must contain the start's independent coordinate");
  }
}

namespace {

double branch_sign(Branch b) { return b == Branch::Minus ? -1.0 : 1.0; }

void check_regular(const MetricCoeffs& m, double x, double y) {
  if (!(m.det() > 0.0)) throw IrregularPoint(x, y);
}

}  // namespace

double meridian_slope(const MetricCoeffs& m, double phi, Branch branch, double x, double y) {
  check_angle(phi);
  check_regular(m, x, y);
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double den = 2.0 * (m.g12 * m.g12 - m.g11 * m.g22 * c * c);
  if (!(std::abs(den) >= kSingularDenominatorRatio * m.g11 * m.g22)) {
    throw SingularDenominator(x, y);
  }
  const double num = -2.0 * m.g11 * m.g12 * s * s +
                     branch_sign(branch) * m.g11 * std::sqrt(m.det()) * std::sin(2.0 * phi);
  return num / den;
}

double meridian_slope(const TwistedSurface& s, double x, double y, double phi, Branch branch) {
  return meridian_slope(metric(s, x, y), phi, branch, x, y);
}

double parallel_slope(const MetricCoeffs& m, double theta, Branch branch, double x, double y) {
  check_angle(theta);
  check_regular(m, x, y);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double den = 2.0 * (m.g12 * m.g12 - m.g11 * m.g22 * c * c);
  if (!(std::abs(den) >= kSingularDenominatorRatio * m.g11 * m.g22)) {
    throw SingularDenominator(x, y);
  }
  const double num = -2.0 * m.g12 * m.g22 * s * s +
                     branch_sign(branch) * m.g22 * std::sqrt(m.det()) * std::sin(2.0 * theta);
  return num / den;
}

double parallel_slope(const TwistedSurface& s, double x, double y, double theta, Branch branch) {
  return parallel_slope(metric(s, x, y), theta, branch, x, y);
}

double slope(Family family, const MetricCoeffs& m, double angle, Branch branch, double x,
             double y) {
  return family == Family::Meridian ? meridian_slope(m, angle, branch, x, y)
                                    : parallel_slope(m, angle, branch, x, y);
}

double cut_cosine(Family family, const MetricCoeffs& m, double k) {
  if (family == Family::Meridian) {
    // direction (dx, dy) = (1, k) against T_x
    const double q = m.g11 * (m.g11 + 2.0 * m.g12 * k + m.g22 * k * k);
    if (!(q > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return (m.g11 + m.g12 * k) / std::sqrt(q);
  }
  // direction (dx, dy) = (k, 1) against T_y
  const double q = m.g22 * (m.g11 * k * k + 2.0 * m.g12 * k + m.g22);
  if (!(q > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (m.g12 * k + m.g22) / std::sqrt(q);
}

QuadraticResidual quadratic_residual(Family family, const MetricCoeffs& m, double angle,
                                     double k) {
  const double s2 = std::sin(angle) * std::sin(angle);
  const double c2 = std::cos(angle) * std::cos(angle);
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  if (family == Family::Meridian) {
    // g11^2 sin^2 + 2 g11 g12 sin^2 k + (g12^2 - g11 g22 cos^2) k^2
    t0 = m.g11 * m.g11 * s2;
    t1 = 2.0 * m.g11 * m.g12 * s2 * k;
    t2 = (m.g12 * m.g12 - m.g11 * m.g22 * c2) * k * k;
  } else {
    // (g11 g22 cos^2 - g12^2) k^2 - 2 g12 g22 sin^2 k - g22^2 sin^2
    t2 = (m.g11 * m.g22 * c2 - m.g12 * m.g12) * k * k;
    t1 = -2.0 * m.g12 * m.g22 * s2 * k;
    t0 = -m.g22 * m.g22 * s2;
  }
  return {t0 + t1 + t2, std::abs(t0) + std::abs(t1) + std::abs(t2)};
}

}  // namespace rhumbforge
