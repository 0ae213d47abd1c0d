#include "rhumbforge/course.hpp"

#include <cmath>

namespace rhumbforge {

double solve_course(const TwistedSurface& s, Family family, double x0, double y0, double end,
                    double target, Branch branch, Interval bracket, const IntegratorConfig& cfg,
                    double angle_tol) {
  if (!(bracket.lo < bracket.hi)) throw ValidationError("course bracket must satisfy lo < hi");
  check_angle(bracket.lo);
  check_angle(bracket.hi);

  LoxodromeSpec spec;
  spec.family = family;
  spec.branch = branch;
  spec.x0 = x0;
  spec.y0 = y0;
  spec.tolerances = cfg;
  const double u0 = spec.u0();
  spec.span = end >= u0 ? Interval{u0, end} : Interval{end, u0};

  if (end == u0) {
    if (target == spec.v0()) return 0.5 * (bracket.lo + bracket.hi);
    throw NoBracket("zero-length span cannot reach a target different from the start");
  }

  // Signed miss distance at the span end for a given angle.
  const auto miss = [&](double angle) {
    spec.angle = angle;
    const Polyline c = integrate_loxodrome(s, spec);
    require_complete(c);
    const CurveSample& last = end >= u0 ? c.back() : c.front();
    return last.v - target;
  };

  double lo = bracket.lo;
  double hi = bracket.hi;
  double f_lo = miss(lo);
  const double f_hi = miss(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NoBracket("endpoint values at the bracket ends do not straddle the target");
  }
  while (hi - lo > angle_tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = miss(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rhumbforge
