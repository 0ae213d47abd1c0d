#pragma once

#include "rhumbforge/integrator.hpp"

namespace rhumbforge {

/// Inverse course problem: finds the constant angle whose loxodrome from
/// (x0, y0) reaches `target` in the dependent variable when the independent
/// variable reaches `end` (y at x = end for meridians, x at y = end for
/// parallels).
///
/// Bisects on `bracket` until its width is at most `angle_tol`. The endpoint
/// must be monotone in the angle over the bracket, and the bracket ends must
/// straddle the target (NoBracket otherwise). A zero-length span whose
/// target equals the start value returns the bracket midpoint. Integration
/// failures surface as IntegrationError.
double solve_course(const TwistedSurface& s, Family family, double x0, double y0, double end,
                    double target, Branch branch, Interval bracket,
                    const IntegratorConfig& cfg = default_integrator_config(),
                    double angle_tol = 1e-10);

}  // namespace rhumbforge
