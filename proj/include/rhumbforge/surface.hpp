#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "rhumbforge/errors.hpp"
#include "rhumbforge/expr.hpp"

namespace rhumbforge {

using Vec3 = Eigen::Vector3d;

/// Euclidean inner product <u, v>.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& u,
                                const Eigen::MatrixBase<DerivedB>& v) {
  return u.dot(v);
}

template <typename Derived>
typename Derived::Scalar norm(const Eigen::MatrixBase<Derived>& u) {
  using std::sqrt;
  return sqrt(inner(u, u));
}

/// Angle in [0, pi] from the normalised inner product. Throws
/// ValidationError for a zero vector.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar angle_between(const Eigen::MatrixBase<DerivedA>& u,
                                        const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  using std::acos;
  const Scalar nu = norm(u);
  const Scalar nv = norm(v);
  if (nu == Scalar(0) || nv == Scalar(0)) {
    throw ValidationError("angle_between: zero-length vector");
  }
  Scalar c = inner(u, v) / (nu * nv);
  if (c > Scalar(1)) c = Scalar(1);
  if (c < Scalar(-1)) c = Scalar(-1);
  return acos(c);
}

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }
};

/// f, g and their derivatives at one profile parameter.
struct ProfileSample {
  double f;
  double g;
  double df;
  double dg;
};

/// Planar generator alpha(y) = (f(y), 0, g(y)) with symbolic derivatives.
class ProfileCurve {
 public:
  static constexpr int kDefaultRegularitySamples = 1024;

  /// Differentiates f and g and checks f'^2 + g'^2 > 0 at `samples`
  /// equally spaced points of `domain` (0 disables the check). Throws
  /// IrregularSurface when the check fails or a sample cannot be evaluated.
  ProfileCurve(Expr f, Expr g, Interval domain,
               int samples = kDefaultRegularitySamples);
  ProfileCurve(std::string_view f, std::string_view g, Interval domain,
               int samples = kDefaultRegularitySamples);

  const Expr& f() const { return f_; }
  const Expr& g() const { return g_; }
  const Expr& f_prime() const { return df_; }
  const Expr& g_prime() const { return dg_; }
  const Interval& domain() const { return domain_; }

  ProfileSample sample(double y) const;

 private:
  Expr f_, g_, df_, dg_;
  Interval domain_;
};

/// Coefficients of the first fundamental form at one point.
struct MetricCoeffs {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;

  double det() const { return g11 * g22 - g12 * g12; }
};

struct Partials {
  Vec3 tx;
  Vec3 ty;
};

/// Twisted surface
///
///   T(x, y) = ((a + f cos bx - g sin bx) cos x,
///              (a + f cos bx - g sin bx) sin x,
///               f sin bx + g cos bx)
///
/// built from a profile curve (f(y), 0, g(y)). `a` offsets the axis about
/// which the profile turns, `b` is the ratio of the two rotation speeds; b = 0
/// gives a surface of revolution about the z-axis.
///
/// Naming follows the loxodrome literature for these surfaces: a *meridian*
/// is a curve y = const (tangent T_x), a *parallel* is a curve x = const
/// (tangent T_y). This is the reverse of the usual convention for surfaces of
/// revolution.
class TwistedSurface {
 public:
  static constexpr int kDefaultRegularityGrid = 64;
  static constexpr Interval kDefaultXDomain{-2.0 * std::numbers::pi, 2.0 * std::numbers::pi};

  /// Checks det > 0 on a `grid` x `grid` sample of the parameter domain
  /// (0 disables the check); throws IrregularSurface otherwise.
  TwistedSurface(double a, double b, ProfileCurve profile,
                 Interval x_domain = kDefaultXDomain,
                 int grid = kDefaultRegularityGrid);

  double a() const { return a_; }
  double b() const { return b_; }
  const ProfileCurve& profile() const { return profile_; }
  const Interval& x_domain() const { return x_domain_; }
  const Interval& y_domain() const { return profile_.domain(); }

 private:
  double a_;
  double b_;
  ProfileCurve profile_;
  Interval x_domain_;
};

Vec3 eval_point(const TwistedSurface& s, double x, double y);

/// Analytic T_x and T_y.
Partials eval_partials(const TwistedSurface& s, double x, double y);

/// g11, g12, g22 in the half-angle form
///
///   g11 = 1/2 {2a^2 + (1 + 2b^2 + cos 2bx) f^2 + (1 + 2b^2 - cos 2bx) g^2
///              - 4ag sin bx + 4f cos bx (a - g sin bx)}
///   g12 = b (f g' - f' g)
///   g22 = f'^2 + g'^2
MetricCoeffs metric(const TwistedSurface& s, double x, double y);

/// T_x x T_y (length sqrt(det)).
Vec3 normal(const TwistedSurface& s, double x, double y);

}  // namespace rhumbforge
