#include "rhumbforge/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace rhumbforge {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::SingularityHit: return "SingularityHit";
    case Termination::StepUnderflow: return "StepUnderflow";
    case Termination::StepLimit: return "StepLimit";
    case Termination::DomainExit: return "DomainExit";
  }
  return "Unknown";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Degenerate metric where the profile, not T_x, collapses.
class DegeneratePoint : public PointError {
 public:
  DegeneratePoint(double x, double y)
      : PointError("DegenerateMetric", "metric determinant below 1e-12", x, y) {}
};

struct XY {
  double x;
  double y;
};

XY to_xy(Family f, double u, double v) {
  return f == Family::Meridian ? XY{u, v} : XY{v, u};
}

bool is_fold(const MetricCoeffs& m) { return m.g22 < m.g11; }

/// Direction field dv/du with the square-root orientation carried along.
class DirectionField {
 public:
  DirectionField(const TwistedSurface& s, Family family, double angle, Branch branch)
      : s_(s), family_(family), angle_(angle), branch_(branch) {}

  /// Orientation at the start. Throws PointError if the start is a pole.
  void orient_at(double x, double y) {
    const MetricCoeffs m = metric(s_, x, y);
    if (m.det() >= kDegenerateDet) {
      orientation_ = normal(s_, x, y).normalized();
      return;
    }
    if (!is_fold(m)) throw DegeneratePoint(x, y);
    const double dy = fold_offset(x, y);
    orientation_ = normal(s_, x, y - dy).normalized();
  }

  /// Re-anchors the carried orientation at an accepted point.
  void carry_to(double x, double y) {
    const MetricCoeffs m = metric(s_, x, y);
    if (m.det() < kDegenerateDet) return;
    const Vec3 n = normal(s_, x, y).normalized();
    orientation_ = n.dot(orientation_) < 0.0 ? Vec3(-n) : n;
  }

  double operator()(double u, double v) const {
    const XY p = to_xy(family_, u, v);
    const MetricCoeffs m = metric(s_, p.x, p.y);
    if (m.det() < kDegenerateDet) {
      if (!is_fold(m)) throw DegeneratePoint(p.x, p.y);
      const double dy = fold_offset(p.x, p.y);
      return 0.5 * (regular(p.x, p.y - dy) + regular(p.x, p.y + dy));
    }
    return regular(p.x, p.y, m);
  }

 private:
  double regular(double x, double y) const { return regular(x, y, metric(s_, x, y)); }

  double regular(double x, double y, const MetricCoeffs& m) const {
    const bool reversed = normal(s_, x, y).dot(orientation_) < 0.0;
    return slope(family_, m, angle_, reversed ? flipped(branch_) : branch_, x, y);
  }

  // Smallest offset in y (from 1e-6, doubling) at which both sides of a fold
  // are non-degenerate.
  double fold_offset(double x, double y) const {
    double dy = 1e-6 * std::max(1.0, std::abs(y));
    for (int i = 0; i < 24; ++i, dy *= 2.0) {
      if (metric(s_, x, y - dy).det() >= kDegenerateDet &&
          metric(s_, x, y + dy).det() >= kDegenerateDet) {
        return dy;
      }
    }
    throw DegeneratePoint(x, y);
  }

  const TwistedSurface& s_;
  Family family_;
  double angle_;
  Branch branch_;
  Vec3 orientation_ = Vec3::Zero();
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b*, the embedded error weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Leg {
  std::vector<CurveSample> samples;  // excluding the start
  std::optional<Diagnostic> stop;
  double error_estimate = 0.0;
};

Diagnostic make_diagnostic(Termination kind, const std::string& cause, XY at,
                           const std::string& message) {
  return Diagnostic{kind, cause, at.x, at.y, message};
}

/// One direction of the integration, from (u0, v0, k0) toward `target`.
Leg integrate_leg(const TwistedSurface& s, const LoxodromeSpec& spec, DirectionField field,
                  double v0, double k0, double target) {
  const IntegratorConfig& cfg = spec.tolerances;
  const Interval& v_domain = spec.family == Family::Meridian ? s.y_domain() : s.x_domain();
  const double dir = target >= spec.u0() ? 1.0 : -1.0;

  Leg leg;
  double u = spec.u0();
  double v = v0;
  double k1 = k0;
  double h = std::min(cfg.max_step, 1e-3);
  long steps = 0;

  auto stop = [&](Termination kind, const std::string& cause, XY at, const std::string& msg) {
    leg.stop = make_diagnostic(kind, cause, at, msg);
  };

  while (dir * (target - u) > 0.0) {
    if (steps++ >= cfg.max_steps) {
      stop(Termination::StepLimit, "StepLimit", to_xy(spec.family, u, v),
           "maximum number of steps exceeded");
      break;
    }
    const double remaining = std::abs(target - u);
    h = std::min({h, cfg.max_step, remaining});
    const bool last = h >= remaining;
    const double hs = dir * h;

    double k2, k3, k4, k5, k6, k7, v5;
    try {
      k2 = field(u + c2 * hs, v + hs * a21 * k1);
      k3 = field(u + c3 * hs, v + hs * (a31 * k1 + a32 * k2));
      k4 = field(u + c4 * hs, v + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = field(u + c5 * hs, v + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = field(u + hs, v + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      v5 = v + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      if (!v_domain.contains(v5)) {
        h *= 0.5;
        if (h < cfg.min_step) {
          stop(Termination::DomainExit, "DomainExit", to_xy(spec.family, u, v),
               "solution leaves the surface domain");
          break;
        }
        continue;
      }
      k7 = field(last ? target : u + hs, v5);
    } catch (const PointError& e) {
      h *= 0.5;
      if (h < cfg.min_step) {
        stop(Termination::SingularityHit, e.kind(), XY{e.x(), e.y()}, e.what());
        break;
      }
      continue;
    } catch (const NumericalError& e) {
      h *= 0.5;
      if (h < cfg.min_step) {
        stop(Termination::DomainExit, "DomainError", to_xy(spec.family, u, v), e.what());
        break;
      }
      continue;
    }

    const double err =
        std::abs(hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(v), std::abs(v5));
    const double ratio = err / scale;
    const double factor =
        ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);

    if (ratio <= 1.0) {
      u = last ? target : u + hs;
      v = v5;
      k1 = k7;
      leg.error_estimate += err;
      const XY p = to_xy(spec.family, u, v);
      field.carry_to(p.x, p.y);
      leg.samples.push_back(CurveSample{u, v, k1, eval_point(s, p.x, p.y), 0.0});
      h *= factor;
    } else {
      h *= std::max(factor, 0.2);
      if (h < cfg.min_step) {
        stop(Termination::StepUnderflow, "StepUnderflow", to_xy(spec.family, u, v),
             "step size fell below min_step");
        break;
      }
    }
  }
  return leg;
}

double hermite(double t, double h, double v0, double v1, double m0, double m1) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * v1 +
         (t3 - t2) * h * m1;
}

double hermite_slope(double t, double h, double v0, double v1, double m0, double m1) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * v0 + (-6 * t2 + 6 * t) * v1) / h + (3 * t2 - 4 * t + 1) * m0 +
         (3 * t2 - 2 * t) * m1;
}

double speed(Family family, const MetricCoeffs& m, double k) {
  const double q = family == Family::Meridian ? m.g11 + 2.0 * m.g12 * k + m.g22 * k * k
                                              : m.g11 * k * k + 2.0 * m.g12 * k + m.g22;
  return std::sqrt(std::max(0.0, q));
}

/// Slope-field root nearest `guess`; `guess` itself where the field is
/// undefined.
double nearest_root(const TwistedSurface& s, Family family, double angle, XY p, double guess) {
  try {
    const MetricCoeffs m = metric(s, p.x, p.y);
    const double r1 = slope(family, m, angle, Branch::Minus, p.x, p.y);
    const double r2 = slope(family, m, angle, Branch::Plus, p.x, p.y);
    if (!std::isfinite(r1) || !std::isfinite(r2)) return guess;
    return std::abs(r1 - guess) <= std::abs(r2 - guess) ? r1 : r2;
  } catch (const NumericalError&) {
    return guess;
  }
}

QuadratureResult segment_length(const TwistedSurface& s, const Polyline& c, std::size_t i,
                                double tol) {
  const CurveSample& a = c.samples[i];
  const CurveSample& b = c.samples[i + 1];
  const double h = b.u - a.u;
  const double chord = (b.v - a.v) / h;
  const double m0 = std::isfinite(a.slope) ? a.slope : chord;
  const double m1 = std::isfinite(b.slope) ? b.slope : chord;
  const auto integrand = [&](double u) {
    const double t = (u - a.u) / h;
    const double v = hermite(t, h, a.v, b.v, m0, m1);
    const double guess = hermite_slope(t, h, a.v, b.v, m0, m1);
    const XY p = to_xy(c.family, u, v);
    const double k = nearest_root(s, c.family, c.angle, p, guess);
    return speed(c.family, metric(s, p.x, p.y), k);
  };
  return adaptive_simpson(integrand, a.u, b.u, tol);
}

constexpr double kArcLengthTol = 1e-10;

void fill_arc_length(const TwistedSurface& s, Polyline& c) {
  if (c.samples.empty()) return;
  const double total_u = c.back().u - c.front().u;
  c.samples.front().s = 0.0;
  for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
    const double h = c.samples[i + 1].u - c.samples[i].u;
    const double tol = total_u > 0.0 ? kArcLengthTol * h / total_u : kArcLengthTol;
    const QuadratureResult r = segment_length(s, c, i, tol);
    // A partial curve may end against a singular point, where the last
    // segments cannot be resolved; keep the estimate and report its error.
    if (!r.converged) {
      if (c.complete()) {
        throw QuadratureError("arc length quadrature did not converge on [" +
                              std::to_string(c.samples[i].u) + ", " +
                              std::to_string(c.samples[i + 1].u) + "]");
      }
      c.error_estimate += r.error;
    }
    c.samples[i + 1].s = c.samples[i].s + r.value;
  }
}

}  // namespace

Polyline integrate_loxodrome(const TwistedSurface& s, const LoxodromeSpec& spec) {
  spec.validate(s);

  Polyline curve;
  curve.family = spec.family;
  curve.angle = spec.angle;
  curve.branch = spec.branch;

  const double u0 = spec.u0();
  const double v0 = spec.v0();
  const XY start = to_xy(spec.family, u0, v0);
  CurveSample first{u0, v0, kNaN, eval_point(s, start.x, start.y), 0.0};

  DirectionField field(s, spec.family, spec.angle, spec.branch);
  try {
    field.orient_at(start.x, start.y);
    first.slope = field(u0, v0);
  } catch (const PointError& e) {
    curve.samples.push_back(first);
    curve.diagnostics.push_back(
        make_diagnostic(Termination::SingularityHit, e.kind(), start, e.what()));
    return curve;
  } catch (const NumericalError& e) {
    curve.samples.push_back(first);
    curve.diagnostics.push_back(
        make_diagnostic(Termination::DomainExit, "DomainError", start, e.what()));
    return curve;
  }

  Leg backward;
  Leg forward;
  if (spec.span.lo < u0) backward = integrate_leg(s, spec, field, v0, first.slope, spec.span.lo);
  if (spec.span.hi > u0) forward = integrate_leg(s, spec, field, v0, first.slope, spec.span.hi);

  curve.samples.reserve(backward.samples.size() + forward.samples.size() + 1);
  curve.samples.insert(curve.samples.end(), backward.samples.rbegin(), backward.samples.rend());
  curve.samples.push_back(first);
  curve.samples.insert(curve.samples.end(), forward.samples.begin(), forward.samples.end());
  if (backward.stop) curve.diagnostics.push_back(*backward.stop);
  if (forward.stop) curve.diagnostics.push_back(*forward.stop);
  curve.error_estimate = backward.error_estimate + forward.error_estimate;

  fill_arc_length(s, curve);
  return curve;
}

void require_complete(const Polyline& c) {
  if (c.complete()) return;
  const Diagnostic& d = c.diagnostics.front();
  throw IntegrationError(std::string(to_string(d.kind)) + " (" + d.cause + "): " + d.message);
}

double arc_length(const TwistedSurface& s, const Polyline& curve) {
  if (curve.samples.size() < 2) return 0.0;
  const double total_u = curve.back().u - curve.front().u;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
    const double h = curve.samples[i + 1].u - curve.samples[i].u;
    const QuadratureResult r = segment_length(s, curve, i, kArcLengthTol * h / total_u);
    if (!r.converged && curve.complete()) {
      throw QuadratureError("arc length quadrature did not converge");
    }
    total += r.value;
  }
  return total;
}

double curve_length(const TwistedSurface& s, Family family, Interval u, const ScalarFunction& v,
                    const ScalarFunction& dv, double tol) {
  const auto integrand = [&](double t) {
    const XY p = to_xy(family, t, v(t));
    return speed(family, metric(s, p.x, p.y), dv(t));
  };
  const QuadratureResult r = adaptive_simpson(integrand, u.lo, u.hi, tol);
  if (!r.converged) throw QuadratureError("curve length quadrature did not converge");
  return r.value;
}

double max_angle_deviation(const TwistedSurface& s, const Polyline& curve) {
  const double target = std::cos(curve.angle);
  double worst = 0.0;
  for (const CurveSample& c : curve.samples) {
    if (!std::isfinite(c.slope)) continue;
    const XY p = to_xy(curve.family, c.u, c.v);
    const MetricCoeffs m = metric(s, p.x, p.y);
    if (m.det() < kDegenerateDet) continue;
    const double cosine = cut_cosine(curve.family, m, c.slope);
    if (!std::isfinite(cosine)) continue;
    worst = std::max(worst, std::min(std::abs(cosine - target), std::abs(cosine + target)));
  }
  return worst;
}

void rebuild_samples(const TwistedSurface& s, Polyline& curve) {
  auto& xs = curve.samples;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const XY p = to_xy(curve.family, xs[i].u, xs[i].v);
    xs[i].p = eval_point(s, p.x, p.y);
    if (std::isfinite(xs[i].slope)) continue;
    double guess = 0.0;
    int n = 0;
    if (i > 0) {
      guess += (xs[i].v - xs[i - 1].v) / (xs[i].u - xs[i - 1].u);
      ++n;
    }
    if (i + 1 < xs.size()) {
      guess += (xs[i + 1].v - xs[i].v) / (xs[i + 1].u - xs[i].u);
      ++n;
    }
    if (n > 0) guess /= n;
    xs[i].slope = nearest_root(s, curve.family, curve.angle, p, guess);
  }
  fill_arc_length(s, curve);
}

}  // namespace rhumbforge
