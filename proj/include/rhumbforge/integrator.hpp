#pragma once

#include <string>
#include <vector>

#include "rhumbforge/loxodrome.hpp"

namespace rhumbforge {

/// Metric determinants below this are treated as degenerate points.
inline constexpr double kDegenerateDet = 1e-12;

struct CurveSample {
  double u = 0.0;      // independent variable (x for meridians, y for parallels)
  double v = 0.0;      // dependent variable
  double slope = 0.0;  // dv/du used by the integrator (NaN if unavailable)
  Vec3 p = Vec3::Zero();
  double s = 0.0;      // cumulative arc length from the first sample

  double x(Family f) const { return f == Family::Meridian ? u : v; }
  double y(Family f) const { return f == Family::Meridian ? v : u; }
};

enum class Termination {
  Completed,
  SingularityHit,  // singular denominator, irregular point, or det < 1e-12
  StepUnderflow,
  StepLimit,
  DomainExit,
};

std::string_view to_string(Termination t);

/// Why one direction of an integration stopped early.
struct Diagnostic {
  Termination kind = Termination::Completed;
  std::string cause;  // e.g. "SingularDenominator", "IrregularPoint"
  double x = 0.0;
  double y = 0.0;
  std::string message;
};

/// Sampled loxodrome, ordered by strictly increasing u.
struct Polyline {
  Family family = Family::Meridian;
  double angle = 0.0;
  Branch branch = Branch::Minus;
  std::vector<CurveSample> samples;
  /// One entry per integration direction that stopped before its span end.
  std::vector<Diagnostic> diagnostics;
  /// Sum of the embedded local error estimates over all accepted steps.
  double error_estimate = 0.0;

  bool complete() const { return diagnostics.empty(); }
  Termination status() const {
    return diagnostics.empty() ? Termination::Completed : diagnostics.front().kind;
  }
  const CurveSample& front() const { return samples.front(); }
  const CurveSample& back() const { return samples.back(); }
};

/// Integrates v'(u) = slope with an embedded Dormand-Prince 5(4) pair and
/// proportional step control, outward from the start to both ends of the
/// span. Accepted steps are at most `max_step` apart and every one is kept as
/// a sample; `s` is filled by the same quadrature as arc_length().
///
/// The square-root term of the slope is continued analytically: the
/// orientation of T_x x T_y is carried along the curve, and where the normal
/// reverses (a fold of the profile, where f' = g' = 0) the branch flips so
/// the direction field stays smooth. At such a fold the slope is the
/// symmetric limit. If the start itself lies on a fold, the requested branch
/// applies on the side of smaller y.
///
/// Never throws for numerical trouble along the way: a direction that hits a
/// singularity, leaves the domain, or runs out of steps stops there and
/// records a Diagnostic. Throws ValidationError for an invalid spec.
Polyline integrate_loxodrome(const TwistedSurface& s, const LoxodromeSpec& spec);

/// Throws IntegrationError carrying the first diagnostic if `c` is partial.
void require_complete(const Polyline& c);

/// Length of the curve by adaptive Simpson (total tolerance 1e-10) of
/// sqrt(g11 + 2 g12 v' + g22 v'^2) du (roles of x, y swapped for
/// parallels). Between samples v is the cubic Hermite interpolant and v' is
/// the root of the slope field closest to the interpolant's derivative.
/// Throws QuadratureError on non-convergence.
double arc_length(const TwistedSurface& s, const Polyline& curve);

/// Length of u -> (x, y)(u, v(u)) over `u`, integrating the first
/// fundamental form with the supplied derivative.
double curve_length(const TwistedSurface& s, Family family, Interval u, const ScalarFunction& v,
                    const ScalarFunction& dv, double tol = 1e-10);

/// Largest deviation of the recomputed cut angle's cosine from cos(angle)
/// over the samples. Lines are unoriented after squaring, so each sample
/// is compared with +cos and -cos and the closer one counts. Samples on
/// degenerate points are skipped.
double max_angle_deviation(const TwistedSurface& s, const Polyline& curve);

/// Fills slope (from the slope-field root nearest the sampled chords) for
/// samples lacking one, then recomputes p and s. Used for curves read back
/// from files.
void rebuild_samples(const TwistedSurface& s, Polyline& curve);

}  // namespace rhumbforge
