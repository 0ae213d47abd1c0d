// Shared fixtures for the test binaries: a small catalog of twisted surfaces,
// random generators, and slope formulas written out longhand so they do not
// share code with the library.
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rhumbforge/expr.hpp"
#include "rhumbforge/surface.hpp"

namespace testsupport {

using rhumbforge::Interval;
using rhumbforge::TwistedSurface;

inline constexpr double kPi = std::numbers::pi;

struct CatalogEntry {
  std::string name;
  double a;
  double b;
  std::string f;
  std::string g;
  Interval y_domain;
  Interval x_domain = TwistedSurface::kDefaultXDomain;

  TwistedSurface build() const {
    return TwistedSurface(a, b, rhumbforge::ProfileCurve(f, g, y_domain), x_domain);
  }
};

inline std::vector<CatalogEntry> catalog() {
  return {
      {"twisted_cone", 0.0, 0.5, "y", "0", {0.02, 25.0}},
      {"torus", 1.0, 0.0, "cos(y)", "sin(y)", {-3.0, 3.0}},
      {"folded_revolution", -1.0, 0.0, "cos(y)^2", "sin(y)^2", {0.1, 2.2}, {-10.0, 2.0}},
      {"twisted_torus", 2.0, 1.0, "cos(y)", "sin(y)", {-3.0, 3.0}},
      {"twisted_parabola", 3.0, -2.0, "y", "0.3*y^2", {0.2, 2.0}},
      {"twisted_exponential", 3.0, 0.5, "exp(y/2)", "y", {-1.0, 1.0}},
  };
}

/// Profiles for the random surface generator; each keeps f'^2 + g'^2 > 0.
struct Profile {
  std::string f;
  std::string g;
  Interval y_domain;
};

inline std::vector<Profile> profile_catalog() {
  return {
      {"y", "0", {0.2, 3.0}},
      {"cos(y)", "sin(y)", {-3.0, 3.0}},
      {"y", "0.3*y^2", {0.2, 2.0}},
      {"exp(y/2)", "y", {-1.0, 1.0}},
      {"1+0.5*cos(y)", "y", {-2.0, 2.0}},
      {"sqrt(1+y^2)", "sin(y)", {-1.5, 1.5}},
  };
}

/// Random surface with a in [-2, 2], b in {0, +-1/2, +-1, +-2}. Surfaces that
/// fail the regularity check are redrawn.
inline TwistedSurface random_surface(std::mt19937_64& rng) {
  static const double twists[] = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
  const auto profiles = profile_catalog();
  for (;;) {
    const double a = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    const double b = twists[std::uniform_int_distribution<int>(0, 6)(rng)];
    const Profile& p = profiles[std::uniform_int_distribution<std::size_t>(0, profiles.size() - 1)(rng)];
    try {
      return TwistedSurface(a, b, rhumbforge::ProfileCurve(p.f, p.g, p.y_domain));
    } catch (const rhumbforge::IrregularSurface&) {
    }
  }
}

struct Point {
  double x;
  double y;
};

inline Point random_point(const TwistedSurface& s, std::mt19937_64& rng) {
  const Interval xd = s.x_domain();
  const Interval yd = s.y_domain();
  return {std::uniform_real_distribution<double>(xd.lo, xd.hi)(rng),
          std::uniform_real_distribution<double>(yd.lo, yd.hi)(rng)};
}

/// T(x, y) straight from the definition.
inline rhumbforge::Vec3 surface_point(double a, double b, double f, double g, double x) {
  const double r = a + f * std::cos(b * x) - g * std::sin(b * x);
  return {r * std::cos(x), r * std::sin(x), f * std::sin(b * x) + g * std::cos(b * x)};
}

/// Profile values and derivatives at y.
struct ProfileValues {
  double f, g, df, dg;
};

inline ProfileValues profile_values(const TwistedSurface& s, double y) {
  const auto& p = s.profile();
  return {rhumbforge::evaluate(p.f(), y), rhumbforge::evaluate(p.g(), y),
          rhumbforge::evaluate(p.f_prime(), y), rhumbforge::evaluate(p.g_prime(), y)};
}

/// The braced quantity of the expanded slope formulas; it equals g11.
inline double expanded_k(double a, double b, double f, double g, double x) {
  const double sb = std::sin(b * x);
  const double cb = std::cos(b * x);
  return a * a - 2 * a * g * sb + 2 * f * cb * (a - g * sb) +
         0.5 * ((1 + 2 * b * b + std::cos(2 * b * x)) * f * f +
                (1 + 2 * b * b - std::cos(2 * b * x)) * g * g);
}

/// Expanded meridian slope dy/dx in profile terms. `sign` is the sign written
/// in front of the square root (-1 for the published "-").
inline double expanded_meridian_slope(double a, double b, const ProfileValues& p, double x,
                                      double phi, int sign) {
  const double k = expanded_k(a, b, p.f, p.g, x);
  const double w = p.f * p.dg - p.g * p.df;
  const double pp = p.df * p.df + p.dg * p.dg;
  const double root = std::sqrt(-b * b * w * w + k * pp);
  const double num = (2 * b * std::sin(phi) * w + sign * 2 * std::cos(phi) * root) *
                     (2 * k) * std::sin(phi);
  const double den = 4 * (b * b * w * w - k * pp * std::cos(phi) * std::cos(phi));
  return -num / den;
}

/// Expanded parallel slope dx/dy in profile terms, same sign convention.
inline double expanded_parallel_slope(double a, double b, const ProfileValues& p, double x,
                                      double theta, int sign) {
  const double k = expanded_k(a, b, p.f, p.g, x);
  const double w = p.f * p.dg - p.g * p.df;
  const double pp = p.df * p.df + p.dg * p.dg;
  const double root = std::sqrt(-b * b * w * w + k * pp);
  const double num = (2 * b * std::sin(theta) * (-w) + sign * 2 * std::cos(theta) * root) * pp *
                     std::sin(theta);
  const double den = 2 * b * b * w * w - 2 * k * pp * std::cos(theta) * std::cos(theta);
  return num / den;
}

// ---------------------------------------------------------------------------
// Random expressions over the grammar, built as text so the parser is exercised.

class ExpressionGenerator {
 public:
  explicit ExpressionGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next(int depth = 3) { return gen(depth); }

 private:
  std::string gen(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
    switch (pick(rng_)) {
      case 0:
        return "y";
      case 1: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", std::uniform_real_distribution<double>(0.1, 3.0)(rng_));
        return buf;
      }
      case 2:
        return std::uniform_int_distribution<int>(0, 1)(rng_) ? "pi" : "e";
      case 3:
        return "sin(" + gen(depth - 1) + ")";
      case 4:
        return "cos(" + gen(depth - 1) + ")";
      case 5:
        return "exp(" + gen(depth - 1) + "/4)";
      case 6:
        return "ln(2+" + square(gen(depth - 1)) + ")";
      case 7:
        return "sqrt(1+" + square(gen(depth - 1)) + ")";
      case 8:
        return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
      case 9:
        return "(" + gen(depth - 1) + "-" + gen(depth - 1) + ")";
      case 10:
        return "(" + gen(depth - 1) + "*" + gen(depth - 1) + ")";
      default:
        return std::uniform_int_distribution<int>(0, 1)(rng_)
                   ? "(" + gen(depth - 1) + ")^" + std::to_string(std::uniform_int_distribution<int>(2, 3)(rng_))
                   : "-(" + gen(depth - 1) + ")/(1.5+" + square(gen(depth - 1)) + ")";
    }
  }

  static std::string square(const std::string& s) { return "(" + s + ")^2"; }

  std::mt19937_64 rng_;
};

/// Central-difference derivative with Richardson extrapolation.
template <typename F>
double fd_derivative(F&& f, double y, double h = 1e-3) {
  const double d1 = (f(y + h) - f(y - h)) / (2 * h);
  const double d2 = (f(y + h / 2) - f(y - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

}  // namespace testsupport
