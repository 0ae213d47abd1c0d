#include "rhumbforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace rhumbforge {

using json = nlohmann::json;

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v + 0.0);  // + 0.0 folds -0 into 0
  return buf;
}

double real_from(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_real(j.get<std::string>());
  throw ValidationError(std::string(what) + " must be a number or a constant expression");
}

Interval interval_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(std::string(what) + " must be a two-element array [lo, hi]");
  }
  Interval iv{real_from(j[0], what), real_from(j[1], what)};
  if (!iv.valid()) throw ValidationError(std::string(what) + " must satisfy lo <= hi");
  return iv;
}

SurfaceDefinition surface_from(const json& j) {
  if (!j.is_object()) throw ValidationError("surface definition must be a JSON object");
  SurfaceDefinition d;
  d.a = real_from(j.at("a"), "a");
  d.b = real_from(j.at("b"), "b");
  d.f = j.at("f").get<std::string>();
  d.g = j.at("g").get<std::string>();
  d.y_domain = interval_from(j.at("y_domain"), "y_domain");
  if (j.contains("x_domain")) d.x_domain = interval_from(j.at("x_domain"), "x_domain");
  return d;
}

IntegratorConfig tolerances_from(const json& j) {
  IntegratorConfig cfg = default_integrator_config();
  if (j.contains("abs_tol")) cfg.abs_tol = j.at("abs_tol").get<double>();
  if (j.contains("rel_tol")) cfg.rel_tol = j.at("rel_tol").get<double>();
  if (j.contains("max_step")) cfg.max_step = j.at("max_step").get<double>();
  if (j.contains("min_step")) cfg.min_step = j.at("min_step").get<double>();
  if (j.contains("max_steps")) cfg.max_steps = j.at("max_steps").get<long>();
  return cfg;
}

CurveRequest curve_request_from(const json& j) {
  CurveRequest r;
  LoxodromeSpec& s = r.spec;
  s.family = parse_family(j.value("family", std::string("meridian")));
  s.angle = real_from(j.at("angle"), "angle");
  s.branch = parse_branch(j.value("branch", std::string("minus")));
  const Interval start = [&] {
    const json& st = j.at("start");
    if (!st.is_array() || st.size() != 2) {
      throw ValidationError("start must be a two-element array [x0, y0]");
    }
    return Interval{real_from(st[0], "start"), real_from(st[1], "start")};
  }();
  s.x0 = start.lo;
  s.y0 = start.hi;
  s.span = interval_from(j.at("span"), "span");
  if (j.contains("tolerances")) s.tolerances = tolerances_from(j.at("tolerances"));
  if (j.contains("out")) r.out = j.at("out").get<std::string>();
  if (j.contains("format")) r.format = parse_curve_format(j.at("format").get<std::string>());
  return r;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

void check_output_path(const std::filesystem::path& p) {
  if (p.empty()) return;
  const auto dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError("output directory does not exist: " + dir.string());
  }
}

}  // namespace

TwistedSurface SurfaceDefinition::build() const {
  return TwistedSurface(a, b, ProfileCurve(f, g, y_domain), x_domain);
}

CurveFormat parse_curve_format(std::string_view s) {
  if (s == "csv") return CurveFormat::Csv;
  if (s == "obj") return CurveFormat::ObjPolyline;
  throw ValidationError("unknown curve format '" + std::string(s) + "' (csv|obj)");
}

void SceneConfig::validate() const {
  if (exports.nx < 2 || exports.ny < 2) {
    throw ValidationError("mesh resolution must be at least 2 x 2");
  }
  check_output_path(exports.mesh);
  for (const CurveRequest& r : loxodromes) {
    check_angle(r.spec.angle);
    check_output_path(r.out);
  }
}

double parse_real(std::string_view text) {
  const Expr e = parse_expression(text);
  if (!e.is_y_free()) throw ValidationError("expected a constant, got an expression in y");
  return evaluate(e, 0.0);
}

SurfaceDefinition parse_surface_definition(std::string_view json_text) {
  try {
    return surface_from(parse_json(json_text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid surface definition: ") + e.what());
  }
}

std::string to_json(const SurfaceDefinition& d) {
  json j = {{"a", d.a},
            {"b", d.b},
            {"f", d.f},
            {"g", d.g},
            {"y_domain", {d.y_domain.lo, d.y_domain.hi}},
            {"x_domain", {d.x_domain.lo, d.x_domain.hi}}};
  return j.dump();
}

SceneConfig parse_scene_config(std::string_view json_text) {
  const json j = parse_json(json_text);
  try {
    SceneConfig cfg;
    cfg.surface = surface_from(j.at("surface"));
    if (j.contains("loxodromes")) {
      for (const json& l : j.at("loxodromes")) cfg.loxodromes.push_back(curve_request_from(l));
    }
    if (j.contains("export")) {
      const json& e = j.at("export");
      cfg.exports.nx = e.value("nx", cfg.exports.nx);
      cfg.exports.ny = e.value("ny", cfg.exports.ny);
      if (e.contains("mesh")) cfg.exports.mesh = e.at("mesh").get<std::string>();
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid scene config: ") + e.what());
  }
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  return parse_scene_config(read_text_file(path));
}

std::string surface_mesh_obj(const TwistedSurface& s, int nx, int ny) {
  if (nx < 2 || ny < 2) throw ValidationError("mesh resolution must be at least 2 x 2");
  const Interval xd = s.x_domain();
  const Interval yd = s.y_domain();
  std::ostringstream out;
  out << "# twisted surface a=" << fmt9(s.a()) << " b=" << fmt9(s.b()) << " f=" << to_string(s.profile().f())
      << " g=" << to_string(s.profile().g()) << "\n";
  for (int j = 0; j < ny; ++j) {
    const double y = j == ny - 1 ? yd.hi : yd.lo + yd.length() * j / (ny - 1);
    for (int i = 0; i < nx; ++i) {
      const double x = i == nx - 1 ? xd.hi : xd.lo + xd.length() * i / (nx - 1);
      const Vec3 p = eval_point(s, x, y);
      out << "v " << fmt9(p.x()) << ' ' << fmt9(p.y()) << ' ' << fmt9(p.z()) << '\n';
    }
  }
  const auto idx = [nx](int i, int j) { return j * nx + i + 1; };
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      out << "f " << idx(i, j) << ' ' << idx(i + 1, j) << ' ' << idx(i + 1, j + 1) << '\n';
      out << "f " << idx(i, j) << ' ' << idx(i + 1, j + 1) << ' ' << idx(i, j + 1) << '\n';
    }
  }
  return out.str();
}

void export_surface_mesh(const TwistedSurface& s, int nx, int ny,
                         const std::filesystem::path& path) {
  write_text_file(path, surface_mesh_obj(s, nx, ny));
}

std::string curve_text(const Polyline& curve, CurveFormat format) {
  if (curve.samples.empty()) throw ValidationError("cannot export an empty polyline");
  std::ostringstream out;
  if (format == CurveFormat::Csv) {
    out << "u,v,x,y,z,s\n";
    for (const CurveSample& c : curve.samples) {
      out << fmt9(c.u) << ',' << fmt9(c.v) << ',' << fmt9(c.p.x()) << ',' << fmt9(c.p.y()) << ','
          << fmt9(c.p.z()) << ',' << fmt9(c.s) << '\n';
    }
    return out.str();
  }
  out << "# loxodrome family=" << to_string(curve.family) << " angle=" << fmt9(curve.angle)
      << " branch=" << to_string(curve.branch) << '\n';
  for (const CurveSample& c : curve.samples) {
    out << "v " << fmt9(c.p.x()) << ' ' << fmt9(c.p.y()) << ' ' << fmt9(c.p.z()) << '\n';
  }
  out << 'l';
  for (std::size_t i = 1; i <= curve.samples.size(); ++i) out << ' ' << i;
  out << '\n';
  return out.str();
}

void export_curve(const Polyline& curve, const std::filesystem::path& path, CurveFormat format) {
  write_text_file(path, curve_text(curve, format));
}

Polyline read_curve_csv(std::string_view csv_text, Family family, double angle, Branch branch) {
  Polyline c;
  c.family = family;
  c.angle = angle;
  c.branch = branch;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("u,v,x,y,z,s", 0) != 0) {
    throw ValidationError("curve CSV must start with the header u,v,x,y,z,s");
  }
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    double f[6];
    std::istringstream fields(line);
    std::string cell;
    int n = 0;
    while (n < 6 && std::getline(fields, cell, ',')) {
      try {
        f[n++] = std::stod(cell);
      } catch (const std::exception&) {
        throw ValidationError("curve CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
    }
    if (n != 6) throw ValidationError("curve CSV row " + std::to_string(row) + ": expected 6 fields");
    if (!c.samples.empty() && !(f[0] > c.samples.back().u)) {
      throw ValidationError("curve CSV row " + std::to_string(row) + ": u must increase strictly");
    }
    c.samples.push_back(CurveSample{f[0], f[1], std::numeric_limits<double>::quiet_NaN(),
                                    Vec3(f[2], f[3], f[4]), f[5]});
  }
  if (c.samples.empty()) throw ValidationError("curve CSV has no samples");
  return c;
}

Polyline load_curve_csv(const std::filesystem::path& path, Family family, double angle,
                        Branch branch) {
  return read_curve_csv(read_text_file(path), family, angle, branch);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace rhumbforge
