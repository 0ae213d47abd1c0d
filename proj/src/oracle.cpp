#include "rhumbforge/oracle.hpp"

#include <cmath>
#include <numbers>

namespace rhumbforge {

using std::numbers::pi;

std::string_view to_string(ExampleId id) {
  switch (id) {
    case ExampleId::Ex1: return "Ex1";
    case ExampleId::Ex2: return "Ex2";
    case ExampleId::Ex3: return "Ex3";
  }
  return "?";
}

ExampleId parse_example_id(std::string_view s) {
  if (s == "Ex1" || s == "ex1" || s == "1") return ExampleId::Ex1;
  if (s == "Ex2" || s == "ex2" || s == "2") return ExampleId::Ex2;
  if (s == "Ex3" || s == "ex3" || s == "3") return ExampleId::Ex3;
  throw ValidationError("unknown example id '" + std::string(s) + "' (Ex1|Ex2|Ex3)");
}

namespace {

PaperExample ex1() {
  const double phi = pi / 6.0;
  // y must stay away from the apex y = 0, where T_x vanishes.
  TwistedSurface surface(0.0, 0.5, ProfileCurve("y", "0", {0.02, 25.0}));
  LoxodromeSpec spec;
  spec.family = Family::Meridian;
  spec.angle = phi;
  spec.x0 = 0.0;
  spec.y0 = 1.0;
  spec.span = {-2.0 * pi, 2.0 * pi};
  const auto y_of = [phi](double x) {
    return std::exp(std::sqrt(5.0) * elliptic_E_incomplete(0.5 * x, 0.8) * std::tan(phi));
  };
  // exp(sqrt(5/3) E(x/2 | 4/5)) (cos(x/2) cos x, cos(x/2) sin x, sin(x/2))
  const auto gamma = [](double x) {
    const double r = std::exp(std::sqrt(5.0 / 3.0) * elliptic_E_incomplete(0.5 * x, 0.8));
    return Vec3(r * std::cos(0.5 * x) * std::cos(x), r * std::cos(0.5 * x) * std::sin(x),
                r * std::sin(0.5 * x));
  };
  return PaperExample{ExampleId::Ex1,
                      std::move(surface),
                      spec,
                      y_of,
                      gamma,
                      {0.0476989, 20.9649},
                      41.8343,
                      {5e-3, true},
                      {1.5e-3, true}};
}

PaperExample ex2() {
  const double phi = pi / 4.0;
  // g11 = (1 + cos y)^2 vanishes at y = +-pi.
  TwistedSurface surface(1.0, 0.0, ProfileCurve("cos(y)", "sin(y)", {-3.0, 3.0}));
  LoxodromeSpec spec;
  spec.family = Family::Meridian;
  spec.angle = phi;
  spec.x0 = 0.0;
  spec.y0 = 0.0;
  spec.span = {-pi, pi};
  const auto y_of = [phi](double x) { return 2.0 * std::atan(x * std::tan(phi)); };
  // ((1 + cos(2 arctan x)) cos x, (1 + cos(2 arctan x)) sin x, sin(2 arctan x)),
  // with the second component's closing parenthesis restored.
  const auto gamma = [](double x) {
    const double w = 2.0 * std::atan(x);
    return Vec3((1.0 + std::cos(w)) * std::cos(x), (1.0 + std::cos(w)) * std::sin(x),
                std::sin(w));
  };
  return PaperExample{ExampleId::Ex2,
                      std::move(surface),
                      spec,
                      y_of,
                      gamma,
                      {-2.52525, 2.52525},
                      7.1425,
                      {1e-3, false},
                      {1.5e-3, true}};
}

PaperExample ex3() {
  const double theta = pi / 3.0;
  // x reaches -8.006 at y = pi/16, beyond the default x domain. The profile
  // folds back on itself at y = pi/2 (f' = g' = 0); the regularity grids do
  // not land on it.
  TwistedSurface surface(-1.0, 0.0, ProfileCurve("cos(y)^2", "sin(y)^2", {0.1, 2.2}),
                         {-10.0, 2.0});
  LoxodromeSpec spec;
  spec.family = Family::Parallel;
  spec.angle = theta;
  spec.x0 = 0.0;
  spec.y0 = 0.5 * pi;
  spec.span = {pi / 16.0, 2.0 * pi / 3.0};
  const auto x_of = [theta](double y) {
    return 2.0 * std::sqrt(2.0) * std::log(std::sin(y)) * std::tan(theta);
  };
  // (-sin^2 y cos(2 sqrt 6 ln sin y), -sin^2 y sin(2 sqrt 6 ln sin y), sin^2 y)
  const auto delta = [](double y) {
    const double s2 = std::sin(y) * std::sin(y);
    const double w = 2.0 * std::sqrt(6.0) * std::log(std::sin(y));
    return Vec3(-s2 * std::cos(w), -s2 * std::sin(w), s2);
  };
  return PaperExample{ExampleId::Ex3,
                      std::move(surface),
                      spec,
                      x_of,
                      delta,
                      {-8.00637, -0.704674},
                      3.42788,
                      {1e-3, true},
                      {1.5e-3, true}};
}

}  // namespace

PaperExample example_fixture(ExampleId id) {
  switch (id) {
    case ExampleId::Ex1: return ex1();
    case ExampleId::Ex2: return ex2();
    case ExampleId::Ex3: return ex3();
  }
  throw ValidationError("unknown example id");
}

Polyline embed_loxodrome(const PaperExample& example, int n) {
  if (n < 2) throw ValidationError("embed_loxodrome needs at least 2 samples");
  Polyline c;
  c.family = example.spec.family;
  c.angle = example.spec.angle;
  c.branch = example.spec.branch;
  const Interval span = example.spec.span;
  constexpr double h = 1e-6;
  for (int i = 0; i < n; ++i) {
    const double u = i == n - 1 ? span.hi : span.lo + span.length() * i / (n - 1);
    const double v = example.closed_form(u);
    const double dv = (example.closed_form(u + h) - example.closed_form(u - h)) / (2.0 * h);
    c.samples.push_back(CurveSample{u, v, dv, example.explicit_curve(u), 0.0});
  }
  double s = 0.0;
  for (std::size_t i = 1; i < c.samples.size(); ++i) {
    Polyline piece = c;
    piece.samples = {c.samples[i - 1], c.samples[i]};
    s += arc_length(example.surface, piece);
    c.samples[i].s = s;
  }
  return c;
}

}  // namespace rhumbforge
