#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "rhumbforge/integrator.hpp"

namespace rhumbforge {

enum class ExampleId { Ex1, Ex2, Ex3 };

std::string_view to_string(ExampleId id);
ExampleId parse_example_id(std::string_view s);  // "Ex1" | "Ex2" | "Ex3"

/// How a reproduced value is compared with its published counterpart.
struct Tolerance {
  double value;
  bool relative;

  bool accepts(double computed, double published) const {
    const double diff = computed - published;
    const double bound = relative ? value * (published < 0 ? -published : published) : value;
    return (diff < 0 ? -diff : diff) <= bound;
  }
};

/// One of the three worked examples of loxodromes on twisted surfaces.
///
///   Ex1  a = 0,  b = 1/2, profile (y, 0),             phi = pi/6, x in [-2pi, 2pi]
///        y(x) = exp(sqrt(5) E(x/2 | 4/5) tan phi)
///   Ex2  a = 1,  b = 0,   profile (cos y, sin y),     phi = pi/4, x in [-pi, pi]
///        y(x) = 2 arctan(x tan phi)
///   Ex3  a = -1, b = 0,   profile (cos^2 y, sin^2 y), theta = pi/3, y in [pi/16, 2pi/3]
///        x(y) = 2 sqrt(2) ln(sin y) tan theta
struct PaperExample {
  ExampleId id;
  TwistedSurface surface;
  LoxodromeSpec spec;
  std::function<double(double)> closed_form;  // u -> v
  std::function<Vec3(double)> explicit_curve;  // u -> 3-D point, as published
  Interval published_range;                    // v over the span
  double published_arc_length;
  Tolerance endpoint_tolerance;
  Tolerance arc_length_tolerance;
};

PaperExample example_fixture(ExampleId id);

/// Samples the published 3-D parametrization of the example's loxodrome on
/// `n` equally spaced values of the independent variable. `slope` comes from
/// a central difference of the closed form and `s` from arc_length().
Polyline embed_loxodrome(const PaperExample& example, int n = 257);

}  // namespace rhumbforge
