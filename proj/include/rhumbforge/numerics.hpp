#pragma once

#include <functional>

namespace rhumbforge {

/// Step and tolerance controls for the Dormand-Prince integrator.
struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.05;
  double min_step = 1e-12;
  long max_steps = 1'000'000;

  /// Throws ValidationError unless 0 < min_step < max_step and both
  /// tolerances are positive.
  void validate() const;
};

/// Default config, with abs_tol and rel_tol taken from RHUMBFORGE_TOL when
/// that variable holds a positive number.
IntegratorConfig default_integrator_config();

using ScalarFunction = std::function<double(double)>;

struct QuadratureResult {
  double value;
  double error;       // estimated absolute error
  bool converged;
};

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`, with Richardson
/// correction. Refinement stops at `max_depth` or after `max_evals` integrand
/// calls. Does not throw; check `converged`.
QuadratureResult adaptive_simpson(const ScalarFunction& f, double a, double b, double tol,
                                  int max_depth = 48, long max_evals = 20000);

/// Adaptive 7/15-point Gauss-Kronrod on [a, b] to absolute tolerance `tol`.
QuadratureResult gauss_kronrod(const ScalarFunction& f, double a, double b, double tol,
                               int max_intervals = 2000);

/// Incomplete elliptic integral of the second kind in amplitude/parameter
/// form, E(phi | m) = int_0^phi sqrt(1 - m sin^2 t) dt, by Gauss-Kronrod
/// quadrature to 1e-12 absolute. Throws DomainError when m sin^2 t exceeds 1
/// somewhere on the path.
double elliptic_E_incomplete(double phi, double m);

}  // namespace rhumbforge
