#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace strip {

/// Nonnegative scalar field V(x1, x2) on the closed strip. Built either from
/// a closed-form expression string, a sampled grid (bilinear interpolation),
/// or directly from a callable.
class Potential {
 public:
  Potential();  // V = 0

  static Potential from_expression(const std::string& expr);
  static Potential from_callable(std::function<double(double, double)> f);

  /// Regular grid of samples; values interpolated bilinearly, clamped to the
  /// grid box outside it.
  static Potential from_grid(double x1_min, double x1_max, double x2_min, double x2_max,
                             std::size_t nx1, std::size_t nx2, std::vector<double> values);

  double operator()(double x1, double x2) const { return eval_(x1, x2); }

  /// Samples V on a grid over the given box and throws if any sample is
  /// negative.
  void check_nonnegative(double x1_min, double x1_max, double x2_min, double x2_max,
                         int samples_per_axis = 101) const;

 private:
  std::function<double(double, double)> eval_;
};

/// Parses the expression grammar used for potentials and densities:
/// +, -, *, /, ^, exp, sin, cos, abs, indicator(v, lo, hi), variables x1, x2.
/// Constant subtrees are folded at parse time.
std::function<double(double, double)> parse_expression(const std::string& expr);

}  // namespace strip
