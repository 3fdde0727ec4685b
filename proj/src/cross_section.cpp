#include "strip/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace strip {

namespace {

// Entire-function extensions of cos(sqrt(t) x) and sin(sqrt(t) x)/sqrt(t).
// For t < 0 these are cosh(k x) and sinh(k x)/k with k = sqrt(-t). Near
// t x^2 = 0 both closed forms lose accuracy, so a 4th-order series in
// z = t x^2 is used instead.
double cfun(double t, double x) {
  const double z = t * x * x;
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (-1.0 / 2.0 + z * (1.0 / 24.0 + z * (-1.0 / 720.0 + z / 40320.0)));
  }
  if (t > 0.0) return std::cos(std::sqrt(t) * x);
  return std::cosh(std::sqrt(-t) * x);
}

double sfun(double t, double x) {
  const double z = t * x * x;
  if (std::abs(z) < 1e-4) {
    return x * (1.0 + z * (-1.0 / 6.0 + z * (1.0 / 120.0 + z * (-1.0 / 5040.0 + z / 362880.0))));
  }
  if (t > 0.0) {
    const double k = std::sqrt(t);
    return std::sin(k * x) / k;
  }
  const double k = std::sqrt(-t);
  return std::sinh(k * x) / k;
}

// Simpson rule on [0, a] with n (even) intervals.
template <typename F>
double simpson(F&& f, double a, int n) {
  const double h = a / n;
  double s = f(0.0) + f(a);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

double secular_value(const StripGeometry& geometry, double lambda) {
  geometry.validate();
  if (geometry.is_dirichlet())
    throw std::invalid_argument("secular_value: Dirichlet eigenvalues are closed-form, Robin only");
  const auto& r = geometry.robin();
  // u(x) = C(lambda, x) - alpha S(lambda, x) satisfies u'(0) + alpha u(0) = 0;
  // the eigenvalue condition is u'(a) + beta u(a) = 0.
  const double C = cfun(lambda, geometry.a);
  const double S = sfun(lambda, geometry.a);
  return (r.beta - r.alpha) * C - (lambda + r.alpha * r.beta) * S;
}

double CrossSection::u1(double x2) const {
  switch (branch) {
    case EigenBranch::DirichletSine:
      return norm_const * std::sin(std::numbers::pi * x2 / geometry.a);
    default:
      return norm_const * (cfun(lambda1, x2) - alpha * sfun(lambda1, x2));
  }
}

double CrossSection::u1_prime(double x2) const {
  switch (branch) {
    case EigenBranch::DirichletSine: {
      const double k = std::numbers::pi / geometry.a;
      return norm_const * k * std::cos(k * x2);
    }
    default:
      // d/dx C = -lambda S, d/dx S = C.
      return norm_const * (-lambda1 * sfun(lambda1, x2) - alpha * cfun(lambda1, x2));
  }
}

double CrossSection::cell_lambda2() const {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return std::min(lambda2, lambda1 + pi2);
}

double cell_lambda2(const StripGeometry& geometry) {
  return first_two_eigenpairs(geometry).cell_lambda2();
}

CrossSection first_two_eigenpairs(const StripGeometry& geometry, double tol) {
  geometry.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("first_two_eigenpairs: tol must be positive");
  const double pi = std::numbers::pi;

  CrossSection cs;
  cs.geometry = geometry;

  if (geometry.is_dirichlet()) {
    cs.lambda1 = pi * pi / (geometry.a * geometry.a);
    cs.lambda2 = 4.0 * pi * pi / (geometry.a * geometry.a);
    cs.branch = EigenBranch::DirichletSine;
    cs.norm_const = std::sqrt(2.0 / geometry.a);
  } else {
    const auto& r = geometry.robin();
    const double kmax = std::max(std::abs(r.alpha), std::abs(r.beta)) + 1.0;
    const double lo = -kmax * kmax;
    const double hi = (3.0 * pi / geometry.a) * (3.0 * pi / geometry.a);
    const int steps = 16000;
    const double dl = (hi - lo) / steps;

    std::vector<double> roots;
    double prev_l = lo;
    double prev_g = secular_value(geometry, lo);
    for (int i = 1; i <= steps && roots.size() < 2; ++i) {
      const double l = lo + i * dl;
      const double g = secular_value(geometry, l);
      if (prev_g == 0.0) {
        roots.push_back(prev_l);
      } else if (g != 0.0 && std::signbit(g) != std::signbit(prev_g)) {
        double a = prev_l, b = l, fa = prev_g;
        while (b - a > tol) {
          const double m = 0.5 * (a + b);
          const double fm = secular_value(geometry, m);
          if (fm == 0.0) { a = b = m; break; }
          if (std::signbit(fm) == std::signbit(fa)) { a = m; fa = fm; } else { b = m; }
        }
        roots.push_back(0.5 * (a + b));
      }
      prev_l = l;
      prev_g = g;
    }
    if (roots.size() < 2) {
      std::ostringstream msg;
      msg << "first_two_eigenpairs: bracket exhaustion, found " << roots.size()
          << " root(s) scanning [" << lo << ", " << hi << "] in " << steps << " steps"
          << " (a=" << geometry.a << ", alpha=" << r.alpha << ", beta=" << r.beta << ")";
      throw std::runtime_error(msg.str());
    }
    cs.lambda1 = roots[0];
    cs.lambda2 = roots[1];
    cs.alpha = r.alpha;
    if (cs.lambda1 > tol) cs.branch = EigenBranch::Trigonometric;
    else if (cs.lambda1 < -tol) cs.branch = EigenBranch::Hyperbolic;
    else cs.branch = EigenBranch::Affine;
    cs.norm_const = 1.0;
  }

  // Normalize with respect to the Lebesgue measure on (0, a).
  const double nrm2 = simpson([&](double x) { const double v = cs.u1(x); return v * v; },
                              geometry.a, 4096);
  cs.norm_const /= std::sqrt(nrm2);

  const int ns = 256;
  cs.u1_samples.reserve(ns + 1);
  for (int i = 0; i <= ns; ++i) {
    const double x = geometry.a * i / ns;
    cs.u1_samples.emplace_back(x, cs.u1(x));
  }
  return cs;
}

}  // namespace strip
