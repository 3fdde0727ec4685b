#include "strip/bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strip {

DyadicWindow DyadicWindow::of_index(int n) {
  if (n == 0) return {0, -1.0, 1.0};
  const double p = std::ldexp(1.0, std::abs(n));  // 2^|n|
  if (n > 0) return {n, p / 2.0, p};
  return {n, -p, -p / 2.0};
}

int DyadicWindow::index_of(double x) {
  const double ax = std::abs(x);
  if (ax <= 1.0) return 0;
  const int n = static_cast<int>(std::ceil(std::log2(ax) - 1e-12));
  return x > 0.0 ? n : -n;
}

NuMeasure build_nu(const Potential& V, const CrossSection& cs, const Measure& mu,
                   double half_length, double resolution) {
  if (!(half_length > 0.0)) throw std::invalid_argument("build_nu: half_length must be positive");
  const Rect bb = mu.bounding_box();
  const Rect region{std::min(bb.x1_lo, -half_length), std::max(bb.x1_hi, half_length),
                    0.0, cs.geometry.a};
  const QuadratureRule rule = quadrature(mu, region, resolution);

  NuMeasure nu;
  nu.half_length = half_length;
  nu.atoms.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& p = rule.nodes[i];
    const double u = cs.u1(p.x2);
    const double w = V(p.x1, p.x2) * u * u * rule.weights[i];
    if (w == 0.0) continue;
    if (std::abs(p.x1) > half_length) {
      nu.mass_deficit += w;
      continue;
    }
    nu.atoms.emplace_back(p.x1, w);
  }
  std::sort(nu.atoms.begin(), nu.atoms.end());
  return nu;
}

double dyadic_F(const NuMeasure& nu, int n) {
  double f = 0.0;
  for (const auto& [x, w] : nu.atoms) {
    if (DyadicWindow::index_of(x) != n) continue;
    f += (n == 0) ? w : std::abs(x) * w;
  }
  return f;
}

std::map<int, double> dyadic_F_all(const NuMeasure& nu, int n_max) {
  std::map<int, double> f;
  for (const auto& [x, w] : nu.atoms) {
    const int n = DyadicWindow::index_of(x);
    if (std::abs(n) > n_max) continue;
    f[n] += (n == 0) ? w : std::abs(x) * w;
  }
  std::erase_if(f, [](const auto& kv) { return kv.second == 0.0; });
  return f;
}

double cell_M(const Potential& V, const Measure& mu, int n, const StripGeometry& geometry,
              double resolution) {
  const Rect cell{static_cast<double>(n), static_cast<double>(n + 1), 0.0, geometry.a};
  const QuadratureRule rule = quadrature(mu, cell, resolution);
  if (rule.total_weight() <= 0.0) return 0.0;
  std::vector<double> f(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    f[i] = V(rule.nodes[i].x1, rule.nodes[i].x2);
  return orlicz_norm(NormRequest::make(std::move(f), rule, NormKind::Orlicz));
}

BoundReport assemble_bound(const std::map<int, double>& f_terms,
                           const std::map<int, double>& m_terms, double c_m, double coeff_m) {
  BoundReport rep;
  rep.f_terms = f_terms;
  rep.m_terms = m_terms;
  rep.c_m = c_m;
  rep.coeff_m = coeff_m;

  double f_sum = 0.0;
  std::vector<double> f_values;
  for (const auto& [n, f] : f_terms) {
    if (f < 0.0) throw std::invalid_argument("assemble_bound: negative F term");
    f_values.push_back(f);
    rep.n_min = std::min(rep.n_min, n);
    rep.n_max = std::max(rep.n_max, n);
    if (f > kOneDimThreshold) f_sum += std::sqrt(f);
  }
  rep.rhs_1d = 1.0 + kOneDimCoefficient * f_sum;

  double m_sum = 0.0;
  for (const auto& [n, m] : m_terms) {
    if (m < 0.0) throw std::invalid_argument("assemble_bound: negative M term");
    rep.n_min = std::min(rep.n_min, n);
    rep.n_max = std::max(rep.n_max, n);
    if (m > c_m) m_sum += m;
  }
  rep.rhs_total = rep.rhs_1d + coeff_m * m_sum;
  rep.weak_l1 = weak_l1(f_values);
  return rep;
}

double weak_l1(const std::vector<double>& seq) {
  std::vector<double> a;
  a.reserve(seq.size());
  for (double v : seq) a.push_back(std::abs(v));
  std::sort(a.begin(), a.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    best = std::max(best, static_cast<double>(k + 1) * a[k]);
  return best;
}

namespace {

// Orlicz norm of a slice x2 -> V(x1, x2) over (0, a) with 1D Lebesgue measure.
double slice_norm(const Potential& V, double x1, double a, int n2, double subtract_g = 0.0) {
  QuadratureRule rule;
  const double h = a / n2;
  std::vector<double> f(n2);
  rule.weights.assign(n2, h);
  rule.nodes.resize(n2);
  for (int j = 0; j < n2; ++j) {
    const double x2 = (j + 0.5) * h;
    rule.nodes[j] = {x1, x2};
    f[j] = V(x1, x2) - subtract_g;
  }
  return orlicz_norm(NormRequest::make(std::move(f), rule, NormKind::Orlicz));
}

}  // namespace

LebesgueRefinement lebesgue_refinement(const Potential& V, const StripGeometry& geometry,
                                       const CrossSection& cs, int n_lo, int n_hi,
                                       double resolution) {
  if (n_hi <= n_lo) throw std::invalid_argument("lebesgue_refinement: empty cell range");
  const double a = geometry.a;
  const int n1 = std::max(4, static_cast<int>(std::ceil(1.0 / resolution)));
  const int n2 = std::max(4, static_cast<int>(std::ceil(a / resolution)));
  const double h1 = 1.0 / n1;

  LebesgueRefinement out;
  Measure leb;
  leb.components.push_back(
      {1.0, LebesgueDensity{Potential::from_expression("1"),
                            Rect{static_cast<double>(n_lo), static_cast<double>(n_hi), 0.0, a}}});

  for (int n = n_lo; n < n_hi; ++n) {
    double d = 0.0, vstar = 0.0;
    for (int i = 0; i < n1; ++i) {
      const double x1 = n + (i + 0.5) * h1;
      d += slice_norm(V, x1, a, n2) * h1;
      // G(x1) = int_0^a V(x1, x2) |u1(x2)|^2 dx2 (midpoint rule)
      double g = 0.0;
      for (int j = 0; j < n2; ++j) {
        const double x2 = (j + 0.5) * (a / n2);
        const double u = cs.u1(x2);
        g += V(x1, x2) * u * u * (a / n2);
      }
      vstar += slice_norm(V, x1, a, n2, g) * h1;
    }
    out.d_terms[n] = d;
    out.v_star_norm += vstar;
    out.m_terms[n] = cell_M(V, leb, n, geometry, resolution);
  }
  return out;
}

std::vector<SweepPoint> gamma_sweep(const Potential& V, const Measure& mu,
                                    const CrossSection& cs, const std::vector<double>& gammas,
                                    double half_length, double resolution, int n_max,
                                    const std::function<int(double)>& count_oracle) {
  for (std::size_t i = 1; i < gammas.size(); ++i)
    if (!(gammas[i] > gammas[i - 1]) || !(gammas[0] > 0.0))
      throw std::invalid_argument("gamma_sweep: gammas must be positive increasing");

  const NuMeasure nu = build_nu(V, cs, mu, half_length, resolution);
  const std::map<int, double> f = dyadic_F_all(nu, n_max);

  std::vector<SweepPoint> points;
  points.reserve(gammas.size());
  for (double gamma : gammas) {
    SweepPoint p;
    p.gamma = gamma;
    std::map<int, double> fg;
    std::vector<double> fg_values;
    p.windows_over_5 = 0;
    for (const auto& [n, fn] : f) {
      fg[n] = gamma * fn;
      fg_values.push_back(gamma * fn);
      if (gamma * fn > 5.0) ++p.windows_over_5;
    }
    const BoundReport rep = assemble_bound(fg, {}, kOneDimThreshold, 1.0);
    p.rhs_1d = rep.rhs_1d;
    p.weak_l1 = rep.weak_l1;
    p.n_neg = count_oracle(gamma);
    points.push_back(p);
  }
  return points;
}

}  // namespace strip
