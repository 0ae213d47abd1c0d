#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "rhumbforge/errors.hpp"
#include "rhumbforge/numerics.hpp"

namespace rhumbforge {

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw ValidationError("integrator tolerances must be positive");
  }
  if (!(min_step > 0.0) || !(min_step < max_step)) {
    throw ValidationError("integrator steps must satisfy 0 < min_step < max_step");
  }
  if (max_steps <= 0) throw ValidationError("integrator max_steps must be positive");
}

IntegratorConfig default_integrator_config() {
  IntegratorConfig cfg;
  if (const char* env = std::getenv("RHUMBFORGE_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end != env && *end == '\0' && tol > 0.0 && std::isfinite(tol)) {
      cfg.abs_tol = tol;
      cfg.rel_tol = tol;
    }
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson

namespace {

struct SimpsonState {
  const ScalarFunction& f;
  long evals_left;
  double error = 0.0;
  bool converged = true;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
  if (st.evals_left < 2) {
    st.converged = false;
    return whole;
  }
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  st.evals_left -= 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    if (std::abs(delta) > 15.0 * tol) st.converged = false;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const ScalarFunction& f, double a, double b, double tol,
                                  int max_depth, long max_evals) {
  if (a == b) return {0.0, 0.0, true};
  SimpsonState st{f, max_evals - 3};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double v = simpson_recurse(st, a, b, fa, fm, fb, whole, tol, max_depth);
  return {v, st.error, st.converged};
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ScalarFunction& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double sum = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace

QuadratureResult gauss_kronrod(const ScalarFunction& f, double a, double b, double tol,
                               int max_intervals) {
  if (a == b) return {0.0, 0.0, true};
  std::priority_queue<Segment> work;
  Segment first = gk15(f, a, b);
  double total = first.value;
  double error = first.error;
  work.push(first);
  int intervals = 1;
  while (error > tol && intervals < max_intervals) {
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment l = gk15(f, worst.a, mid);
    const Segment r = gk15(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    error += l.error + r.error - worst.error;
    work.push(l);
    work.push(r);
    ++intervals;
  }
  // Re-sum to shed the rounding accumulated by the incremental updates.
  double value = 0.0;
  double err = 0.0;
  while (!work.empty()) {
    value += work.top().value;
    err += work.top().error;
    work.pop();
  }
  return {value, err, err <= tol};
}

// ---------------------------------------------------------------------------
// Elliptic integral of the second kind

double elliptic_E_incomplete(double phi, double m) {
  if (!std::isfinite(phi) || !std::isfinite(m)) throw DomainError("elliptic E: non-finite input");
  if (phi == 0.0) return 0.0;
  if (phi < 0.0) return -elliptic_E_incomplete(-phi, m);
  if (m > 1.0) {
    // m sin^2 t <= 1 on [0, phi] requires phi <= asin(1/sqrt(m)).
    const double limit = std::asin(1.0 / std::sqrt(m));
    if (phi > limit) {
      throw DomainError("elliptic E: m sin^2 t exceeds 1 on [0, phi] (m = " + std::to_string(m) +
                        ", phi = " + std::to_string(phi) + ")");
    }
  }
  const auto integrand = [m](double t) {
    const double s = std::sin(t);
    return std::sqrt(std::max(0.0, 1.0 - m * s * s));
  };
  // Split at multiples of pi/2 so each piece is smooth and monotone.
  constexpr double quarter = 0.5 * std::numbers::pi;
  double total = 0.0;
  double lo = 0.0;
  while (lo < phi) {
    const double hi = std::min(phi, lo + quarter);
    const QuadratureResult r = gauss_kronrod(integrand, lo, hi, 1e-14);
    if (!r.converged && r.error > 1e-12) {
      throw QuadratureError("elliptic E: quadrature did not converge");
    }
    total += r.value;
    lo = hi;
  }
  return total;
}

}  // namespace rhumbforge
