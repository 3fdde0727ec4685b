#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "strip/geometry.hpp"
#include "strip/potential.hpp"

namespace strip {

/// Absolutely continuous part: density against 2D Lebesgue measure on a box.
struct LebesgueDensity {
  Potential density;
  Rect box;  // support box; the density is integrated over box only
};

/// 1D Hausdorff measure on a segment with a density in arclength from p0.
struct LineSegment {
  Point p0, p1;
  std::function<double(double)> linear_density;
};

/// Middle-thirds self-similar measure on a segment, truncated at a finite
/// generation depth; each depth-level interval carries mass total_mass/2^depth.
struct CantorSegment {
  Point p0, p1;
  int depth = 1;
  double total_mass = 1.0;
};

using MeasureComponent = std::variant<LebesgueDensity, LineSegment, CantorSegment>;

struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;

  double total_weight() const;
  void append(const QuadratureRule& other, double scale);
};

struct Measure {
  std::vector<std::pair<double, MeasureComponent>> components;  // (weight, component)

  /// Checks invariants against the strip: nonempty, positive weights,
  /// components inside the closed strip.
  void validate(const StripGeometry& geometry) const;

  Rect bounding_box() const;
};

struct AhlforsEstimate {
  double d_hat = 0.0;
  double c0_hat = 0.0, c1_hat = 0.0;
  double r_min = 0.0, r_max = 0.0;
  double c2_hat = 0.0, c3_hat = 0.0;
  std::size_t samples_used = 0;
};

/// Quadrature rule for the measure restricted to an axis-aligned region.
/// Empty intersection yields an empty (zero-mass) rule.
QuadratureRule quadrature(const Measure& measure, const Rect& region, double resolution);

/// Mass of the closed Euclidean ball B(center, r).
double measure_of_ball(const Measure& measure, const Point& center, double r);

/// Least-squares fit of the Ahlfors regularity dimension and constants from
/// ball masses at sampled centers/radii, plus cell-mass comparability
/// constants. Centers are drawn from quadrature nodes as support proxies.
AhlforsEstimate ahlfors_fit(const Measure& measure, int sample_count, double r_min, double r_max,
                            std::uint64_t seed);

}  // namespace strip
