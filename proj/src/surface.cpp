#include "rhumbforge/surface.hpp"

#include <sstream>

namespace rhumbforge {

namespace {

double grid_point(const Interval& iv, int i, int n) {
  if (n == 1) return 0.5 * (iv.lo + iv.hi);
  if (i == n - 1) return iv.hi;
  return iv.lo + iv.length() * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

ProfileCurve::ProfileCurve(Expr f, Expr g, Interval domain, int samples)
    : f_(std::move(f)),
      g_(std::move(g)),
      df_(differentiate(f_)),
      dg_(differentiate(g_)),
      domain_(domain) {
  if (!domain_.valid()) throw ValidationError("profile domain must be a finite [lo, hi]");
  for (int i = 0; i < samples; ++i) {
    const double y = grid_point(domain_, i, samples);
    ProfileSample p{};
    try {
      p = sample(y);
    } catch (const NumericalError& e) {
      throw IrregularSurface("profile cannot be evaluated at y = " + std::to_string(y) + ": " +
                             e.what());
    }
    if (!(p.df * p.df + p.dg * p.dg > 0.0)) {
      throw IrregularSurface("profile is not regular (f'^2 + g'^2 = 0) at y = " +
                             std::to_string(y));
    }
  }
}

ProfileCurve::ProfileCurve(std::string_view f, std::string_view g, Interval domain,
                           int samples)
    : ProfileCurve(parse_expression(f), parse_expression(g), domain, samples) {}

ProfileSample ProfileCurve::sample(double y) const {
  return {evaluate(f_, y), evaluate(g_, y), evaluate(df_, y), evaluate(dg_, y)};
}

TwistedSurface::TwistedSurface(double a, double b, ProfileCurve profile, Interval x_domain,
                               int grid)
    : a_(a), b_(b), profile_(std::move(profile)), x_domain_(x_domain) {
  if (!std::isfinite(a_) || !std::isfinite(b_)) {
    throw ValidationError("surface parameters a and b must be finite");
  }
  if (!x_domain_.valid()) throw ValidationError("x domain must be a finite [lo, hi]");
  for (int j = 0; j < grid; ++j) {
    const double y = grid_point(y_domain(), j, grid);
    for (int i = 0; i < grid; ++i) {
      const double x = grid_point(x_domain_, i, grid);
      double det = 0.0;
      try {
        det = metric(*this, x, y).det();
      } catch (const NumericalError& e) {
        throw IrregularSurface("surface cannot be evaluated at (" + std::to_string(x) + ", " +
                               std::to_string(y) + "): " + e.what());
      }
      if (!(det > 0.0)) {
        std::ostringstream msg;
        msg << "surface is not regular at (x, y) = (" << x << ", " << y
            << "): g11 g22 - g12^2 = " << det;
        throw IrregularSurface(msg.str());
      }
    }
  }
}

Vec3 eval_point(const TwistedSurface& s, double x, double y) {
  const ProfileSample p = s.profile().sample(y);
  const double cb = std::cos(s.b() * x);
  const double sb = std::sin(s.b() * x);
  const double r = s.a() + p.f * cb - p.g * sb;
  return {r * std::cos(x), r * std::sin(x), p.f * sb + p.g * cb};
}

Partials eval_partials(const TwistedSurface& s, double x, double y) {
  const ProfileSample p = s.profile().sample(y);
  const double b = s.b();
  const double cb = std::cos(b * x);
  const double sb = std::sin(b * x);
  const double cx = std::cos(x);
  const double sx = std::sin(x);

  const double r = s.a() + p.f * cb - p.g * sb;
  const double z = p.f * sb + p.g * cb;
  // dr/dx = -b z, dz/dx = b (r - a)
  const double r_x = -b * z;
  const double z_x = b * (p.f * cb - p.g * sb);
  const double r_y = p.df * cb - p.dg * sb;
  const double z_y = p.df * sb + p.dg * cb;

  return {Vec3(r_x * cx - r * sx, r_x * sx + r * cx, z_x),
          Vec3(r_y * cx, r_y * sx, z_y)};
}

MetricCoeffs metric(const TwistedSurface& s, double x, double y) {
  const ProfileSample p = s.profile().sample(y);
  const double a = s.a();
  const double b = s.b();
  const double f = p.f;
  const double g = p.g;
  const double sbx = std::sin(b * x);
  const double cbx = std::cos(b * x);
  const double c2bx = std::cos(2.0 * b * x);

  MetricCoeffs m;
  m.g11 = 0.5 * (2.0 * a * a + (1.0 + 2.0 * b * b + c2bx) * f * f +
                 (1.0 + 2.0 * b * b - c2bx) * g * g - 4.0 * a * g * sbx +
                 4.0 * f * cbx * (a - g * sbx));
  m.g12 = b * (f * p.dg - p.df * g);
  m.g22 = p.df * p.df + p.dg * p.dg;
  return m;
}

Vec3 normal(const TwistedSurface& s, double x, double y) {
  const Partials t = eval_partials(s, x, y);
  return t.tx.cross(t.ty);
}

}  // namespace rhumbforge
