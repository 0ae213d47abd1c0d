#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhumbforge/integrator.hpp"

namespace rhumbforge {

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  double angle = 0.2 * std::numbers::pi;
  Branch branch = Branch::Minus;
  int curves = 4;
  IntegratorConfig tolerances = default_integrator_config();
};

struct CheckResult {
  std::string name;
  double worst = 0.0;      // largest observed error measure
  double threshold = 0.0;
  int checked = 0;         // samples that entered the measure
  bool passed() const { return checked > 0 && worst <= threshold; }
};

/// Invariant suite for one surface, on random regular points:
///
///   metric_equivalence  |metric() - <T_i, T_j>|, 1e-9 (scaled by max(1, g11 + g22))
///   finite_difference   partials vs central differences of eval_point, 1e-5 relative
///   root_residual       both families and branches satisfy their quadratic, 1e-9 relative
///   angle_constancy     integrated loxodromes keep cos(angle), 1e-6
std::vector<CheckResult> verify_surface(const TwistedSurface& s, const VerifyOptions& opt = {});

}  // namespace rhumbforge
