#pragma once

#include <cmath>
#include <stdexcept>
#include <variant>

namespace strip {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Axis-aligned rectangle [x1_lo, x1_hi] x [x2_lo, x2_hi].
struct Rect {
  double x1_lo, x1_hi, x2_lo, x2_hi;

  bool contains(const Point& p) const {
    return p.x1 >= x1_lo && p.x1 <= x1_hi && p.x2 >= x2_lo && p.x2 <= x2_hi;
  }
};

struct Robin {
  double alpha = 0.0;
  double beta = 0.0;
};
struct Dirichlet {};

/// The strip R x (0, a) with boundary conditions on x2 = 0 and x2 = a.
struct StripGeometry {
  double a = 1.0;
  std::variant<Robin, Dirichlet> bc = Robin{};

  bool is_dirichlet() const { return std::holds_alternative<Dirichlet>(bc); }
  const Robin& robin() const {
    if (is_dirichlet()) throw std::invalid_argument("geometry is Dirichlet, no Robin parameters");
    return std::get<Robin>(bc);
  }

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("strip width a must be positive");
    if (!is_dirichlet()) {
      const auto& r = std::get<Robin>(bc);
      if (!std::isfinite(r.alpha) || !std::isfinite(r.beta))
        throw std::invalid_argument("Robin parameters must be finite");
    }
  }
};

}  // namespace strip
