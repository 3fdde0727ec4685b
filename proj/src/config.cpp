#include "strip/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace strip {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("config error: " + what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (key == k) { ok = true; break; }
    if (!ok) fail("unknown key '" + key + "' in " + where);
  }
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + " must be finite");
  return x;
}

Point point_from(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where + " must be [x1, x2]");
  return Point{finite_number(v[0], where), finite_number(v[1], where)};
}

StripGeometry parse_geometry(const json& g) {
  check_keys(g, {"a", "bc", "alpha", "beta"}, "geometry");
  StripGeometry geom;
  geom.a = finite_number(g.at("a"), "geometry.a");
  const std::string bc = g.at("bc").get<std::string>();
  if (bc == "dirichlet") {
    if (g.contains("alpha") || g.contains("beta"))
      fail("alpha/beta are not allowed with Dirichlet boundary conditions");
    geom.bc = Dirichlet{};
  } else if (bc == "robin") {
    geom.bc = Robin{finite_number(g.at("alpha"), "geometry.alpha"),
                    finite_number(g.at("beta"), "geometry.beta")};
  } else {
    fail("geometry.bc must be \"robin\" or \"dirichlet\"");
  }
  geom.validate();
  return geom;
}

Measure parse_measure(const json& m, const StripGeometry& geometry) {
  check_keys(m, {"components"}, "measure");
  Measure measure;
  for (const auto& c : m.at("components")) {
    const double weight = finite_number(c.at("weight"), "component weight");
    const std::string type = c.at("type").get<std::string>();
    if (type == "lebesgue") {
      check_keys(c, {"type", "weight", "density", "box"}, "lebesgue component");
      const auto& b = c.at("box");
      if (!b.is_array() || b.size() != 4) fail("lebesgue box must be [x1_lo, x1_hi, x2_lo, x2_hi]");
      LebesgueDensity comp{Potential::from_expression(c.at("density").get<std::string>()),
                           Rect{finite_number(b[0], "box"), finite_number(b[1], "box"),
                                finite_number(b[2], "box"), finite_number(b[3], "box")}};
      measure.components.emplace_back(weight, std::move(comp));
    } else if (type == "segment") {
      check_keys(c, {"type", "weight", "p0", "p1", "density"}, "segment component");
      auto density = parse_expression(c.at("density").get<std::string>());
      LineSegment comp{point_from(c.at("p0"), "p0"), point_from(c.at("p1"), "p1"),
                       [density](double s) { return density(s, 0.0); }};
      measure.components.emplace_back(weight, std::move(comp));
    } else if (type == "cantor") {
      check_keys(c, {"type", "weight", "p0", "p1", "depth", "total_mass"}, "cantor component");
      CantorSegment comp{point_from(c.at("p0"), "p0"), point_from(c.at("p1"), "p1"),
                         c.at("depth").get<int>(),
                         finite_number(c.at("total_mass"), "total_mass")};
      measure.components.emplace_back(weight, std::move(comp));
    } else {
      fail("unknown measure component type '" + type + "'");
    }
  }
  measure.validate(geometry);
  return measure;
}

Potential parse_potential(const json& p) {
  check_keys(p, {"expr", "grid", "grid_file"}, "potential");
  if (p.contains("expr")) return Potential::from_expression(p.at("expr").get<std::string>());
  json g;
  if (p.contains("grid_file")) {
    std::ifstream in(p.at("grid_file").get<std::string>());
    if (!in) fail("cannot open grid file " + p.at("grid_file").get<std::string>());
    in >> g;
  } else if (p.contains("grid")) {
    g = p.at("grid");
  } else {
    fail("potential needs 'expr', 'grid', or 'grid_file'");
  }
  check_keys(g, {"x1_min", "x1_max", "x2_min", "x2_max", "nx1", "nx2", "values"}, "potential grid");
  std::vector<double> values = g.at("values").get<std::vector<double>>();
  return Potential::from_grid(finite_number(g.at("x1_min"), "x1_min"),
                              finite_number(g.at("x1_max"), "x1_max"),
                              finite_number(g.at("x2_min"), "x2_min"),
                              finite_number(g.at("x2_max"), "x2_max"),
                              g.at("nx1").get<std::size_t>(), g.at("nx2").get<std::size_t>(),
                              std::move(values));
}

Controls parse_controls(const json& c) {
  check_keys(c,
             {"L", "h", "n_max", "resolution", "tol", "c_m", "C_m", "gammas", "seed",
              "max_refinements", "sample_count", "r_min", "r_max"},
             "controls");
  Controls ctl;
  if (c.contains("L")) ctl.half_length = finite_number(c.at("L"), "controls.L");
  if (c.contains("h")) ctl.h = finite_number(c.at("h"), "controls.h");
  if (c.contains("n_max")) ctl.n_max = c.at("n_max").get<int>();
  if (c.contains("resolution")) ctl.resolution = finite_number(c.at("resolution"), "controls.resolution");
  if (c.contains("tol")) ctl.tol = finite_number(c.at("tol"), "controls.tol");
  if (c.contains("c_m")) ctl.c_m = finite_number(c.at("c_m"), "controls.c_m");
  if (c.contains("C_m")) ctl.coeff_m = finite_number(c.at("C_m"), "controls.C_m");
  if (c.contains("gammas")) {
    ctl.gammas.clear();
    for (const auto& g : c.at("gammas")) ctl.gammas.push_back(finite_number(g, "controls.gammas"));
  }
  if (c.contains("seed")) ctl.seed = c.at("seed").get<std::uint64_t>();
  if (c.contains("max_refinements")) ctl.max_refinements = c.at("max_refinements").get<int>();
  if (c.contains("sample_count")) ctl.sample_count = c.at("sample_count").get<int>();
  if (c.contains("r_min")) ctl.r_min = finite_number(c.at("r_min"), "controls.r_min");
  if (c.contains("r_max")) ctl.r_max = finite_number(c.at("r_max"), "controls.r_max");
  if (!(ctl.half_length > 0.0) || !(ctl.h > 0.0) || !(ctl.resolution > 0.0) || !(ctl.tol > 0.0))
    fail("controls L, h, resolution, tol must be positive");
  return ctl;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, {"geometry", "measure", "potential", "controls"}, "top level");

  RunConfig cfg;
  cfg.geometry = parse_geometry(root.at("geometry"));
  if (root.contains("measure")) cfg.measure = parse_measure(root.at("measure"), cfg.geometry);
  if (root.contains("potential")) cfg.potential = parse_potential(root.at("potential"));
  if (root.contains("controls")) cfg.controls = parse_controls(root.at("controls"));

  cfg.potential.check_nonnegative(-cfg.controls.half_length, cfg.controls.half_length, 0.0,
                                  cfg.geometry.a);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace strip
