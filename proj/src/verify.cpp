#include "rhumbforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rhumbforge {

namespace {

constexpr double kFdStep = 1e-6;

double fd_error(const Vec3& analytic, const Vec3& fd) {
  return (analytic - fd).norm() / std::max(1.0, analytic.norm());
}

}  // namespace

std::vector<CheckResult> verify_surface(const TwistedSurface& s, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> ux(s.x_domain().lo, s.x_domain().hi);
  std::uniform_real_distribution<double> uy(s.y_domain().lo, s.y_domain().hi);

  CheckResult metric_eq{"metric_equivalence", 0.0, 1e-9, 0};
  CheckResult fd{"finite_difference", 0.0, 1e-5, 0};
  CheckResult roots{"root_residual", 0.0, 1e-9, 0};
  CheckResult angle{"angle_constancy", 0.0, 1e-6, 0};

  for (int attempts = 0; metric_eq.checked < opt.samples && attempts < 20 * opt.samples;
       ++attempts) {
    const double x = ux(rng);
    const double y = uy(rng);
    MetricCoeffs m;
    Partials t;
    try {
      m = metric(s, x, y);
      t = eval_partials(s, x, y);
    } catch (const NumericalError&) {
      continue;
    }
    if (m.det() < kDegenerateDet) continue;

    const double scale = std::max(1.0, m.g11 + m.g22);
    const double d = std::max({std::abs(m.g11 - t.tx.dot(t.tx)), std::abs(m.g12 - t.tx.dot(t.ty)),
                               std::abs(m.g22 - t.ty.dot(t.ty))});
    metric_eq.worst = std::max(metric_eq.worst, d / scale);
    ++metric_eq.checked;

    try {
      const Vec3 tx_fd =
          (eval_point(s, x + kFdStep, y) - eval_point(s, x - kFdStep, y)) / (2 * kFdStep);
      const Vec3 ty_fd =
          (eval_point(s, x, y + kFdStep) - eval_point(s, x, y - kFdStep)) / (2 * kFdStep);
      fd.worst = std::max({fd.worst, fd_error(t.tx, tx_fd), fd_error(t.ty, ty_fd)});
      ++fd.checked;
    } catch (const NumericalError&) {
    }

    for (Family fam : {Family::Meridian, Family::Parallel}) {
      for (Branch br : {Branch::Minus, Branch::Plus}) {
        try {
          const double k = slope(fam, m, opt.angle, br, x, y);
          const QuadraticResidual r = quadratic_residual(fam, m, opt.angle, k);
          roots.worst = std::max(roots.worst, std::abs(r.residual) / r.scale);
          ++roots.checked;
        } catch (const NumericalError&) {
        }
      }
    }
  }

  // Short loxodromes of both families from random starts.
  for (int attempts = 0; angle.checked < opt.curves && attempts < 25 * opt.curves; ++attempts) {
    LoxodromeSpec spec;
    spec.family = attempts % 2 == 0 ? Family::Meridian : Family::Parallel;
    spec.angle = opt.angle;
    spec.branch = opt.branch;
    spec.tolerances = opt.tolerances;
    spec.x0 = ux(rng);
    spec.y0 = uy(rng);
    const Interval& ud = spec.family == Family::Meridian ? s.x_domain() : s.y_domain();
    const double half = std::min(0.5, 0.25 * ud.length());
    spec.span = {std::max(ud.lo, spec.u0() - half), std::min(ud.hi, spec.u0() + half)};
    try {
      const Polyline c = integrate_loxodrome(s, spec);
      if (!c.complete() || c.samples.size() < 2) continue;
      angle.worst = std::max(angle.worst, max_angle_deviation(s, c));
      ++angle.checked;
    } catch (const Error&) {
    }
  }

  return {metric_eq, fd, roots, angle};
}

}  // namespace rhumbforge
