#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rhumbforge/integrator.hpp"

namespace rhumbforge {

/// Surface definition record:
///
///     {"a": real, "b": real, "f": expr-text, "g": expr-text,
///      "y_domain": [lo, hi], "x_domain": [lo, hi]}
///
/// Reals may also be given as constant expression strings ("2*pi").
/// x_domain is optional and defaults to [-2pi, 2pi].
struct SurfaceDefinition {
  double a = 0.0;
  double b = 0.0;
  std::string f = "y";
  std::string g = "0";
  Interval y_domain{0.0, 1.0};
  Interval x_domain = TwistedSurface::kDefaultXDomain;

  TwistedSurface build() const;
};

enum class CurveFormat { Csv, ObjPolyline };

CurveFormat parse_curve_format(std::string_view s);  // "csv" | "obj"

struct CurveRequest {
  LoxodromeSpec spec;
  std::filesystem::path out;  // empty: not exported
  CurveFormat format = CurveFormat::Csv;
};

struct ExportSettings {
  int nx = 65;
  int ny = 65;
  std::filesystem::path mesh;  // empty: no mesh
};

/// Surface, loxodrome requests and export settings of one scene:
///
///     {"surface": {...surface definition...},
///      "loxodromes": [{"family": "meridian"|"parallel", "angle": real,
///                      "branch": "minus"|"plus", "start": [x0, y0],
///                      "span": [lo, hi], "tolerances": {...},
///                      "out": path, "format": "csv"|"obj"}],
///      "export": {"nx": int, "ny": int, "mesh": path}}
struct SceneConfig {
  SurfaceDefinition surface;
  std::vector<CurveRequest> loxodromes;
  ExportSettings exports;

  /// Resolutions >= 2, angles in (0, pi), output directories exist.
  void validate() const;
};

/// Real from text: a number or a constant expression such as "pi/6".
double parse_real(std::string_view text);

SurfaceDefinition parse_surface_definition(std::string_view json_text);
std::string to_json(const SurfaceDefinition& def);
SceneConfig parse_scene_config(std::string_view json_text);
SceneConfig load_scene_config(const std::filesystem::path& path);

/// Wavefront OBJ of the nx x ny parameter grid: vertices row-major with x
/// fastest, two triangles per cell wound counter-clockwise about T_x x T_y,
/// coordinates with 9 significant digits.
std::string surface_mesh_obj(const TwistedSurface& s, int nx, int ny);
void export_surface_mesh(const TwistedSurface& s, int nx, int ny,
                         const std::filesystem::path& path);

/// CSV with header `u,v,x,y,z,s`, or an OBJ `v`/`l` polyline.
std::string curve_text(const Polyline& curve, CurveFormat format);
void export_curve(const Polyline& curve, const std::filesystem::path& path, CurveFormat format);

/// Reads a CSV written by export_curve. Slopes are left NaN; call
/// rebuild_samples() to recover them.
Polyline read_curve_csv(std::string_view csv_text, Family family, double angle, Branch branch);
Polyline load_curve_csv(const std::filesystem::path& path, Family family, double angle,
                        Branch branch);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rhumbforge
