#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strip/geometry.hpp"
#include "strip/measure.hpp"
#include "strip/potential.hpp"

namespace strip {

inline constexpr int kSchemaVersion = 1;

struct Controls {
  double half_length = 8.0;
  double h = 0.125;
  int n_max = 8;
  double resolution = 0.05;
  double tol = 1e-12;
  double c_m = 0.046;
  double coeff_m = 1.0;
  std::vector<double> gammas{1.0, 2.0, 4.0, 8.0, 16.0};
  std::uint64_t seed = 1;
  int max_refinements = 4;
  int sample_count = 200;
  double r_min = 0.01;
  double r_max = 0.1;
};

struct RunConfig {
  StripGeometry geometry;
  Measure measure;
  Potential potential;
  Controls controls;
};

/// Parses and validates a JSON run configuration. Unknown keys, non-finite
/// numbers, components outside the strip, and negative potential samples are
/// all rejected.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace strip
