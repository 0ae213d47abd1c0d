// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "rhumbforge/expr.hpp"
#include "rhumbforge/integrator.hpp"
#include "rhumbforge/numerics.hpp"
#include "rhumbforge/oracle.hpp"
#include "support.hpp"

using namespace rhumbforge;
using testsupport::kPi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Independent adaptive Simpson used as the quadrature oracle.
double oracle_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      double fa, double fm, double fb, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15;
  }
  return oracle_simpson(f, a, m, tol / 2, fa, flm, fm, left, depth - 1) +
         oracle_simpson(f, m, b, tol / 2, fm, frm, fb, right, depth - 1);
}

double oracle_integral(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return oracle_simpson(f, a, b, tol, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 50);
}

struct Run {
  Polyline curve;
  double arc;
  double millis;
};

Run run_example(ExampleId id) {
  const PaperExample ex = example_fixture(id);
  const auto t0 = std::chrono::steady_clock::now();
  Polyline c = integrate_loxodrome(ex.surface, ex.spec);
  const double arc = c.complete() ? arc_length(ex.surface, c) : std::nan("");
  const auto t1 = std::chrono::steady_clock::now();
  return {std::move(c), arc, std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

// 1-3 -------------------------------------------------------------------------

Outcome criterion_example1() {
  const Run r = run_example(ExampleId::Ex1);
  const double hi = r.curve.back().v;
  const bool ok = r.curve.complete() && rel_err(hi, 20.9649) <= 0.005 &&
                  rel_err(r.arc, 41.8343) <= 0.0015 && r.millis < 1000;
  return {ok, format("y(2pi)=%.7g (rel %.2e), arc=%.7g (rel %.2e), %.1f ms", hi, rel_err(hi, 20.9649), r.arc,
                     rel_err(r.arc, 41.8343), r.millis)};
}

Outcome criterion_example2() {
  const Run r = run_example(ExampleId::Ex2);
  const double lo = r.curve.front().v;
  const double hi = r.curve.back().v;
  const bool ok = r.curve.complete() && std::abs(lo + 2.52525) <= 1e-3 && std::abs(hi - 2.52525) <= 1e-3 &&
                  rel_err(r.arc, 7.1425) <= 0.0015 && r.millis < 1000;
  return {ok, format("y(-pi)=%.7g, y(pi)=%.7g, arc=%.7g (rel %.2e), %.1f ms", lo, hi, r.arc,
                     rel_err(r.arc, 7.1425), r.millis)};
}

Outcome criterion_example3() {
  const Run r = run_example(ExampleId::Ex3);
  const double lo = r.curve.front().v;
  const double hi = r.curve.back().v;
  const bool ok = r.curve.complete() && rel_err(lo, -8.00637) <= 0.001 && rel_err(hi, -0.704674) <= 0.001 &&
                  rel_err(r.arc, 3.42788) <= 0.0015 && r.millis < 1000;
  return {ok, format("x(pi/16)=%.7g, x(2pi/3)=%.7g, arc=%.7g (rel %.2e), %.1f ms", lo, hi, r.arc,
                     rel_err(r.arc, 3.42788), r.millis)};
}

// 4 ---------------------------------------------------------------------------

Outcome criterion_closed_form_tracking() {
  // Closed forms written out here rather than taken from the fixtures.
  const auto ex1 = [](double x) { return std::exp(std::sqrt(5.0 / 3.0) * std::ellint_2(std::sqrt(0.8), x / 2)); };
  const auto ex2 = [](double x) { return 2 * std::atan(x * std::tan(kPi / 4)); };
  const auto ex3 = [](double y) { return 2 * std::sqrt(2.0) * std::log(std::sin(y)) * std::tan(kPi / 3); };
  double worst1 = 0.0;
  double worst2 = 0.0;
  double worst3 = 0.0;
  bool complete = true;
  const Polyline c1 = run_example(ExampleId::Ex1).curve;
  const Polyline c2 = run_example(ExampleId::Ex2).curve;
  const Polyline c3 = run_example(ExampleId::Ex3).curve;
  complete = c1.complete() && c2.complete() && c3.complete();
  for (const CurveSample& s : c1.samples) worst1 = std::max(worst1, rel_err(s.v, ex1(s.u)));
  for (const CurveSample& s : c2.samples) worst2 = std::max(worst2, std::abs(s.v - ex2(s.u)));
  for (const CurveSample& s : c3.samples) worst3 = std::max(worst3, std::abs(s.v - ex3(s.u)));
  const bool ok = complete && worst1 <= 1e-6 && worst2 <= 1e-8 && worst3 <= 1e-8;
  return {ok, format("Ex1 max rel %.2e over %zu samples, Ex2 max abs %.2e over %zu, Ex3 max abs %.2e over %zu",
                     worst1, c1.samples.size(), worst2, c2.samples.size(), worst3, c3.samples.size())};
}

// 5 ---------------------------------------------------------------------------

double recomputed_cos(Family family, const MetricCoeffs& m, double k) {
  if (family == Family::Meridian) {
    return (m.g11 + m.g12 * k) / std::sqrt(m.g11 * m.g11 + 2 * m.g11 * m.g12 * k + m.g11 * m.g22 * k * k);
  }
  return (m.g12 * k + m.g22) / std::sqrt(m.g11 * m.g22 * k * k + 2 * m.g12 * m.g22 * k + m.g22 * m.g22);
}

Outcome criterion_angle_constancy() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> angles(0.1, kPi - 0.1);
  int accepted = 0;
  int attempts = 0;
  double worst = 0.0;
  while (accepted < 25 && attempts < 1000) {
    ++attempts;
    const TwistedSurface s = testsupport::random_surface(rng);
    const auto [x0, y0] = testsupport::random_point(s, rng);
    LoxodromeSpec spec;
    spec.family = std::uniform_int_distribution<int>(0, 1)(rng) ? Family::Meridian : Family::Parallel;
    spec.angle = angles(rng);
    spec.branch = std::uniform_int_distribution<int>(0, 1)(rng) ? Branch::Minus : Branch::Plus;
    spec.x0 = x0;
    spec.y0 = y0;
    const Interval ud = spec.family == Family::Meridian ? s.x_domain() : s.y_domain();
    const double u0 = spec.u0();
    spec.span = {std::max(ud.lo, u0 - 1.0), std::min(ud.hi, u0 + 1.0)};
    Polyline c;
    try {
      c = integrate_loxodrome(s, spec);
    } catch (const Error&) {
      continue;
    }
    if (!c.complete()) continue;
    ++accepted;
    const double want = std::cos(spec.angle);
    for (const CurveSample& p : c.samples) {
      const MetricCoeffs m = metric(s, p.x(c.family), p.y(c.family));
      const double got = recomputed_cos(c.family, m, p.slope);
      worst = std::max(worst, std::min(std::abs(got - want), std::abs(got + want)));
    }
  }
  const bool ok = accepted == 25 && worst <= 1e-6;
  return {ok, format("%d completed curves (%d drawn), max |cos deviation| %.2e", accepted, attempts, worst)};
}

// 6 ---------------------------------------------------------------------------

Outcome criterion_metric_equivalence() {
  std::mt19937_64 rng(31415);
  double worst_inner = 0.0;
  double worst_fd = 0.0;
  int checked = 0;
  const double h = 1e-6;
  for (const auto& entry : testsupport::catalog()) {
    const TwistedSurface s = entry.build();
    for (int i = 0; i < 100; ++i) {
      auto [x, y] = testsupport::random_point(s, rng);
      y = std::clamp(y, s.y_domain().lo + h, s.y_domain().hi - h);
      const auto p = testsupport::profile_values(s, y);
      const auto at = [&](double xx, double yy) {
        const auto q = testsupport::profile_values(s, yy);
        return testsupport::surface_point(s.a(), s.b(), q.f, q.g, xx);
      };
      const Partials d = eval_partials(s, x, y);
      const MetricCoeffs m = metric(s, x, y);
      worst_inner = std::max({worst_inner, std::abs(m.g11 - d.tx.dot(d.tx)), std::abs(m.g12 - d.tx.dot(d.ty)),
                              std::abs(m.g22 - d.ty.dot(d.ty))});
      const Vec3 fx = (at(x + h, y) - at(x - h, y)) / (2 * h);
      const Vec3 fy = (at(x, y + h) - at(x, y - h)) / (2 * h);
      const double scale = m.g11 + m.g22;
      worst_fd = std::max({worst_fd, std::abs(m.g11 - fx.dot(fx)) / scale, std::abs(m.g12 - fx.dot(fy)) / scale,
                           std::abs(m.g22 - fy.dot(fy)) / scale});
      ++checked;
    }
  }
  const bool ok = worst_inner <= 1e-9 && worst_fd <= 1e-5;
  return {ok, format("%d points on 6 surfaces: max |metric - <T_i,T_j>| %.2e, max finite-difference rel %.2e",
                     checked, worst_inner, worst_fd)};
}

// 7 ---------------------------------------------------------------------------

Outcome criterion_root_residual() {
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> angles(0.05, kPi - 0.05);
  double worst = 0.0;
  int samples = 0;
  int roots = 0;
  while (samples < 1000) {
    const TwistedSurface s = testsupport::random_surface(rng);
    const auto [x, y] = testsupport::random_point(s, rng);
    const MetricCoeffs m = metric(s, x, y);
    if (m.det() < 1e-8) continue;
    ++samples;
    const double a = angles(rng);
    const double s2 = std::sin(a) * std::sin(a);
    const double c2 = std::cos(a) * std::cos(a);
    for (Branch br : {Branch::Minus, Branch::Plus}) {
      try {
        const double k = meridian_slope(s, x, y, a, br);
        const double t[] = {m.g11 * m.g11 * s2, 2 * m.g11 * m.g12 * s2 * k,
                            (m.g12 * m.g12 - m.g11 * m.g22 * c2) * k * k};
        worst = std::max(worst, std::abs(t[0] + t[1] + t[2]) / (std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2])));
        ++roots;
      } catch (const SingularDenominator&) {
      }
      try {
        const double k = parallel_slope(s, x, y, a, br);
        const double t[] = {-m.g22 * m.g22 * s2, -2 * m.g12 * m.g22 * s2 * k,
                            (m.g11 * m.g22 * c2 - m.g12 * m.g12) * k * k};
        worst = std::max(worst, std::abs(t[0] + t[1] + t[2]) / (std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2])));
        ++roots;
      } catch (const SingularDenominator&) {
      }
    }
  }
  const bool ok = worst <= 1e-9 && roots >= 3900;
  return {ok, format("%d samples, %d roots, max relative residual %.2e", samples, roots, worst)};
}

// 8 ---------------------------------------------------------------------------

Outcome criterion_reduction() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> angles(0.05, kPi - 0.05);
  bool g12_zero = true;
  double worst_slope = 0.0;
  for (const auto& p : testsupport::profile_catalog()) {
    const TwistedSurface s(std::uniform_real_distribution<double>(2.5, 4.0)(rng), 0.0,
                           ProfileCurve(p.f, p.g, p.y_domain));
    for (int i = 0; i < 50; ++i) {
      const auto [x, y] = testsupport::random_point(s, rng);
      const MetricCoeffs m = metric(s, x, y);
      g12_zero = g12_zero && m.g12 == 0.0;
      const double phi = angles(rng);
      if (std::abs(phi - kPi / 2) < 1e-3) continue;
      const double want = std::sqrt(m.g11 / m.g22) * std::tan(phi);
      worst_slope = std::max(worst_slope, rel_err(meridian_slope(s, x, y, phi, Branch::Minus), want));
    }
  }

  // Sphere: ln(sec y + tan y) = x tan(phi), with the left side from quadrature of sec.
  const TwistedSurface sphere(0.0, 0.0, ProfileCurve("cos(y)", "sin(y)", {-1.4, 1.4}));
  LoxodromeSpec spec;
  spec.angle = kPi / 4;
  spec.x0 = 0.0;
  spec.y0 = 0.0;
  spec.span = {-2.0, 2.0};
  const Polyline c = integrate_loxodrome(sphere, spec);
  double worst_mercator = 0.0;
  for (const CurveSample& s : c.samples) {
    const double lhs = oracle_integral([](double t) { return 1 / std::cos(t); }, 0.0, s.v, 1e-13);
    worst_mercator = std::max(worst_mercator, std::abs(lhs - s.u * std::tan(spec.angle)));
  }
  const bool ok = g12_zero && worst_slope <= 1e-12 && c.complete() && worst_mercator <= 1e-7;
  return {ok, format("g12 exactly 0: %s, max slope rel %.2e, sphere Mercator max abs %.2e over %zu samples",
                     g12_zero ? "yes" : "no", worst_slope, worst_mercator, c.samples.size())};
}

// 9 ---------------------------------------------------------------------------

Outcome criterion_elliptic() {
  const double e = elliptic_E_incomplete(kPi / 2, 0.8);
  const double oracle =
      oracle_integral([](double t) { return std::sqrt(1 - 0.8 * std::sin(t) * std::sin(t)); }, 0, kPi / 2, 1e-14);
  double worst_sym = 0.0;
  for (double m : {0.0, 0.3, 0.8}) {
    worst_sym = std::max(worst_sym, std::abs(elliptic_E_incomplete(kPi, m) - 2 * elliptic_E_incomplete(kPi / 2, m)));
  }
  const bool ok = std::abs(e - oracle) <= 1e-10 && worst_sym <= 1e-12;
  return {ok, format("E(pi/2|0.8)=%.15g, oracle %.15g (diff %.2e), max |E(pi|m)-2E(pi/2|m)| %.2e", e, oracle,
                     std::abs(e - oracle), worst_sym)};
}

// 10 --------------------------------------------------------------------------

Outcome criterion_expressions() {
  testsupport::ExpressionGenerator gen(1234);
  std::mt19937_64 rng(5678);
  std::uniform_real_distribution<double> points(-2.0, 2.0);
  int passed = 0;
  int points_checked = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Expr e = parse_expression(gen.next(3));
    const Expr de = differentiate(e);
    bool ok = true;
    for (int k = 0; k < 10; ++k) {
      const double y = points(rng);
      try {
        if (std::abs(evaluate(e, y)) > 1e6) continue;
        const double fd = testsupport::fd_derivative([&](double t) { return evaluate(e, t); }, y);
        const double err = std::abs(evaluate(de, y) - fd) / (1 + std::abs(fd));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-5;
        ++points_checked;
      } catch (const NumericalError&) {
      }
    }
    passed += ok ? 1 : 0;
  }
  return {passed == 100, format("%d/100 expressions pass (%d points), max rel error %.2e", passed, points_checked,
                                worst)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "Example 1 reproduction", criterion_example1},
      {2, "Example 2 reproduction", criterion_example2},
      {3, "Example 3 reproduction", criterion_example3},
      {4, "Closed-form tracking", criterion_closed_form_tracking},
      {5, "Angle constancy", criterion_angle_constancy},
      {6, "Metric equivalence", criterion_metric_equivalence},
      {7, "Root residual", criterion_root_residual},
      {8, "Revolution reduction", criterion_reduction},
      {9, "Elliptic integral", criterion_elliptic},
      {10, "Expression derivatives", criterion_expressions},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2d %-24s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
