#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>

#include "rhumbforge/io.hpp"
#include "rhumbforge/oracle.hpp"
#include "rhumbforge/verify.hpp"

namespace rhumbforge::cli {

namespace {

using json = nlohmann::json;

/// Surface source shared by every subcommand: a scene config or flags.
struct SurfaceArgs {
  std::string config;
  std::string a = "0";
  std::string b = "0";
  std::string f;
  std::string g;
  std::vector<std::string> y_domain;
  std::vector<std::string> x_domain;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "Scene config (JSON)");
    app->add_option("--a", a, "Offset of the profile's rotation axis");
    app->add_option("--b", b, "Twist rate");
    app->add_option("--f", f, "Profile f(y)");
    app->add_option("--g", g, "Profile g(y)");
    app->add_option("--y-domain", y_domain, "Profile domain LO,HI")->expected(2)->delimiter(',');
    app->add_option("--x-domain", x_domain, "Rotation domain LO,HI")->expected(2)->delimiter(',');
  }

  std::optional<SceneConfig> scene() const {
    if (config.empty()) return std::nullopt;
    return load_scene_config(config);
  }

  SurfaceDefinition definition() const {
    if (!config.empty()) return load_scene_config(config).surface;
    if (f.empty() || g.empty() || y_domain.size() != 2) {
      throw ValidationError("give --config or all of --f, --g and --y-domain");
    }
    SurfaceDefinition d;
    d.a = parse_real(a);
    d.b = parse_real(b);
    d.f = f;
    d.g = g;
    d.y_domain = {parse_real(y_domain[0]), parse_real(y_domain[1])};
    if (x_domain.size() == 2) d.x_domain = {parse_real(x_domain[0]), parse_real(x_domain[1])};
    if (!d.y_domain.valid() || !d.x_domain.valid()) {
      throw ValidationError("domains must satisfy lo <= hi");
    }
    return d;
  }
};

/// Flags every subcommand accepts.
struct CommonArgs {
  std::string branch = "minus";
  double tol = 0.0;
  double max_step = 0.0;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--branch", branch, "Square-root branch: minus|plus")
        ->check(CLI::IsMember({"minus", "plus"}));
    app->add_option("--tol", tol, "Integrator abs/rel tolerance");
    app->add_option("--max-step", max_step, "Largest integration step");
    app->add_option("--out", out, "Output path");
  }

  IntegratorConfig config(IntegratorConfig base = default_integrator_config()) const {
    if (tol != 0.0) {
      base.abs_tol = tol;
      base.rel_tol = tol;
    }
    if (max_step != 0.0) base.max_step = max_step;
    base.validate();
    return base;
  }
};

json diagnostic_json(const Diagnostic& d) {
  return {{"status", std::string(to_string(d.kind))},
          {"cause", d.cause},
          {"x", d.x},
          {"y", d.y},
          {"message", d.message}};
}

json sample_json(const Polyline& c, const CurveSample& s) {
  return {{"u", s.u}, {"v", s.v}, {"x", s.x(c.family)}, {"y", s.y(c.family)}, {"s", s.s}};
}

json curve_summary(const TwistedSurface& surface, const Polyline& c) {
  json diags = json::array();
  for (const Diagnostic& d : c.diagnostics) diags.push_back(diagnostic_json(d));
  return {{"family", std::string(to_string(c.family))},
          {"angle", c.angle},
          {"branch", std::string(to_string(c.branch))},
          {"samples", c.samples.size()},
          {"endpoints", {{"lo", sample_json(c, c.front())}, {"hi", sample_json(c, c.back())}}},
          {"arc_length", arc_length(surface, c)},
          {"max_angle_deviation", max_angle_deviation(surface, c)},
          {"error_estimate", c.error_estimate},
          {"status", std::string(to_string(c.status()))},
          {"diagnostics", diags}};
}

// ---------------------------------------------------------------------------

int run_surface(const SurfaceArgs& sa, const CommonArgs& ca, std::optional<int> nx,
                std::optional<int> ny, std::ostream& out) {
  const auto scene = sa.scene();
  const SurfaceDefinition def = scene ? scene->surface : sa.definition();
  const int rx = nx.value_or(scene ? scene->exports.nx : 65);
  const int ry = ny.value_or(scene ? scene->exports.ny : 65);
  if (rx < 2 || ry < 2) throw ValidationError("mesh resolution must be at least 2 x 2");
  const TwistedSurface s = def.build();
  std::filesystem::path path = ca.out;
  if (path.empty() && scene) path = scene->exports.mesh;
  if (path.empty()) {
    out << surface_mesh_obj(s, rx, ry);
    return kOk;
  }
  export_surface_mesh(s, rx, ry, path);
  out << json{{"mesh", path.string()},
              {"vertices", rx * ry},
              {"faces", 2 * (rx - 1) * (ry - 1)}}
             .dump()
      << '\n';
  return kOk;
}

struct LoxodromeArgs {
  std::string family = "meridian";
  std::string angle;
  std::vector<std::string> start;
  std::vector<std::string> span;
  std::string format = "csv";
  int index = 0;
};

int run_loxodrome(const SurfaceArgs& sa, const CommonArgs& ca, const LoxodromeArgs& la,
                  std::ostream& out, std::ostream& err) {
  const auto scene = sa.scene();
  const TwistedSurface s = (scene ? scene->surface : sa.definition()).build();

  CurveRequest req;
  if (scene && !scene->loxodromes.empty() && la.angle.empty()) {
    if (la.index < 0 || la.index >= static_cast<int>(scene->loxodromes.size())) {
      throw ValidationError("--index out of range");
    }
    req = scene->loxodromes[static_cast<std::size_t>(la.index)];
  } else {
    if (la.angle.empty() || la.start.size() != 2 || la.span.size() != 2) {
      throw ValidationError("give --angle, --start X0,Y0 and --span LO,HI (or a config)");
    }
    req.spec.family = parse_family(la.family);
    req.spec.angle = parse_real(la.angle);
    req.spec.x0 = parse_real(la.start[0]);
    req.spec.y0 = parse_real(la.start[1]);
    req.spec.span = {parse_real(la.span[0]), parse_real(la.span[1])};
    req.format = parse_curve_format(la.format);
  }
  req.spec.branch = parse_branch(ca.branch);
  req.spec.tolerances = ca.config(req.spec.tolerances);
  if (!ca.out.empty()) {
    req.out = ca.out;
    req.format = parse_curve_format(la.format);
  }

  const Polyline c = integrate_loxodrome(s, req.spec);
  if (!req.out.empty()) export_curve(c, req.out, req.format);
  out << curve_summary(s, c).dump(2) << '\n';
  if (!c.complete()) {
    err << diagnostic_json(c.diagnostics.front()).dump() << '\n';
    return kNumerical;
  }
  return kOk;
}

struct ArcLengthArgs {
  std::string curve;
  std::string family = "meridian";
  std::string angle;
};

int run_arclength(const SurfaceArgs& sa, const CommonArgs& ca, const ArcLengthArgs& aa,
                  std::ostream& out) {
  const TwistedSurface s = sa.definition().build();
  if (aa.angle.empty()) throw ValidationError("--angle is required");
  const double angle = parse_real(aa.angle);
  check_angle(angle);
  Polyline c = load_curve_csv(aa.curve, parse_family(aa.family), angle, parse_branch(ca.branch));
  rebuild_samples(s, c);
  out << json{{"arc_length", arc_length(s, c)}, {"samples", c.samples.size()}}.dump() << '\n';
  return kOk;
}

int run_verify(const SurfaceArgs& sa, const CommonArgs& ca, int samples, std::uint64_t seed,
               const std::string& angle, std::ostream& out) {
  const TwistedSurface s = sa.definition().build();
  VerifyOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  if (!angle.empty()) opt.angle = parse_real(angle);
  check_angle(opt.angle);
  opt.branch = parse_branch(ca.branch);
  opt.tolerances = ca.config();
  const auto results = verify_surface(s, opt);
  json report = json::array();
  bool ok = true;
  for (const CheckResult& r : results) {
    report.push_back({{"check", r.name},
                      {"worst", r.worst},
                      {"threshold", r.threshold},
                      {"checked", r.checked},
                      {"passed", r.passed()}});
    ok = ok && r.passed();
  }
  out << json{{"passed", ok}, {"checks", report}}.dump(2) << '\n';
  if (!ca.out.empty()) write_text_file(ca.out, report.dump(2) + "\n");
  return ok ? kOk : kNumerical;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int run_examples(const CommonArgs& ca, std::ostream& out) {
  bool all_ok = true;
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-13s %-13s %-13s %-13s %-11s %-11s %-6s\n", "id",
                "v(lo)", "closed(lo)", "v(hi)", "closed(hi)", "arc", "published", "result");
  out << line;
  for (ExampleId id : {ExampleId::Ex1, ExampleId::Ex2, ExampleId::Ex3}) {
    PaperExample ex = example_fixture(id);
    ex.spec.branch = parse_branch(ca.branch);
    ex.spec.tolerances = ca.config(ex.spec.tolerances);
    const Polyline c = integrate_loxodrome(ex.surface, ex.spec);
    const double arc = arc_length(ex.surface, c);
    const double lo = c.front().v;
    const double hi = c.back().v;
    const bool ok = c.complete() &&
                    ex.endpoint_tolerance.accepts(lo, ex.published_range.lo) &&
                    ex.endpoint_tolerance.accepts(hi, ex.published_range.hi) &&
                    ex.arc_length_tolerance.accepts(arc, ex.published_arc_length);
    all_ok = all_ok && ok;
    std::snprintf(line, sizeof line, "%-4s %-13s %-13s %-13s %-13s %-11s %-11s %-6s\n",
                  std::string(to_string(id)).c_str(), fmt("%.9g", lo).c_str(),
                  fmt("%.9g", ex.closed_form(ex.spec.span.lo)).c_str(), fmt("%.9g", hi).c_str(),
                  fmt("%.9g", ex.closed_form(ex.spec.span.hi)).c_str(), fmt("%.7g", arc).c_str(),
                  fmt("%.7g", ex.published_arc_length).c_str(), ok ? "PASS" : "FAIL");
    out << line;
    if (!ca.out.empty()) {
      const std::filesystem::path dir = ca.out;
      std::filesystem::create_directories(dir);
      const std::string stem(to_string(id));
      export_surface_mesh(ex.surface, 65, 65, dir / (stem + "_surface.obj"));
      export_curve(c, dir / (stem + "_loxodrome.csv"), CurveFormat::Csv);
      export_curve(c, dir / (stem + "_loxodrome.obj"), CurveFormat::ObjPolyline);
    }
  }
  return all_ok ? kOk : kNumerical;
}

json error_json(const char* kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loxodromes on twisted surfaces", "rhumbforge"};
  app.require_subcommand(1);

  SurfaceArgs surface_args;
  CommonArgs common;

  auto* surface_cmd = app.add_subcommand("surface", "Export the surface as an OBJ mesh");
  std::optional<int> nx;
  std::optional<int> ny;
  surface_args.add_to(surface_cmd);
  common.add_to(surface_cmd);
  surface_cmd->add_option("--nx", nx, "Grid points along x");
  surface_cmd->add_option("--ny", ny, "Grid points along y");

  auto* lox_cmd = app.add_subcommand("loxodrome", "Integrate one loxodrome");
  LoxodromeArgs lox;
  surface_args.add_to(lox_cmd);
  common.add_to(lox_cmd);
  lox_cmd->add_option("--family", lox.family, "meridian|parallel")
      ->check(CLI::IsMember({"meridian", "parallel"}));
  lox_cmd->add_option("--angle", lox.angle, "Cut angle in (0, pi), e.g. pi/6");
  lox_cmd->add_option("--start", lox.start, "Start X0,Y0")->expected(2)->delimiter(',');
  lox_cmd->add_option("--span", lox.span, "Independent-variable span LO,HI")
      ->expected(2)
      ->delimiter(',');
  lox_cmd->add_option("--format", lox.format, "csv|obj")->check(CLI::IsMember({"csv", "obj"}));
  lox_cmd->add_option("--index", lox.index, "Loxodrome entry of the config");

  auto* arc_cmd = app.add_subcommand("arclength", "Recompute the arc length of a stored curve");
  ArcLengthArgs arc;
  surface_args.add_to(arc_cmd);
  common.add_to(arc_cmd);
  arc_cmd->add_option("--curve", arc.curve, "Curve CSV (u,v,x,y,z,s)")->required();
  arc_cmd->add_option("--family", arc.family, "meridian|parallel")
      ->check(CLI::IsMember({"meridian", "parallel"}));
  arc_cmd->add_option("--angle", arc.angle, "Cut angle the curve was traced with");

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on a surface");
  int verify_samples = 100;
  std::uint64_t verify_seed = 1;
  std::string verify_angle;
  surface_args.add_to(verify_cmd);
  common.add_to(verify_cmd);
  verify_cmd->add_option("--samples", verify_samples, "Random points");
  verify_cmd->add_option("--seed", verify_seed, "Random seed");
  verify_cmd->add_option("--angle", verify_angle, "Cut angle for the slope checks");

  auto* examples_cmd = app.add_subcommand("examples", "Reproduce the three worked examples");
  common.add_to(examples_cmd);

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("UsageError", e.what()).dump() << '\n';
    return kValidation;
  }

  try {
    if (surface_cmd->parsed()) return run_surface(surface_args, common, nx, ny, out);
    if (lox_cmd->parsed()) return run_loxodrome(surface_args, common, lox, out, err);
    if (arc_cmd->parsed()) return run_arclength(surface_args, common, arc, out);
    if (verify_cmd->parsed()) {
      return run_verify(surface_args, common, verify_samples, verify_seed, verify_angle, out);
    }
    if (examples_cmd->parsed()) return run_examples(common, out);
  } catch (const PointError& e) {
    err << json{{"error", e.kind()}, {"x", e.x()}, {"y", e.y()}, {"message", e.what()}}.dump()
        << '\n';
    return kNumerical;
  } catch (const ValidationError& e) {
    err << error_json("ValidationError", e.what()).dump() << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    err << error_json("NumericalError", e.what()).dump() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << error_json("Error", e.what()).dump() << '\n';
    return kFailure;
  }
  return kValidation;
}

}  // namespace rhumbforge::cli
