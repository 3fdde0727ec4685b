// Independent reference computations used only by the test suites. These
// deliberately take different routes than the library: finite differences and
// Sturm slicing instead of the secular equation, brute-force dual maximization
// instead of the Amemiya representation, shooting instead of matrix inertia.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "strip/tridiag.hpp"

namespace oracles {

/// First `count` eigenvalues of -u'' = lambda u on (0, a) with Robin
/// conditions u'(0) + alpha u(0) = 0, u'(a) + beta u(a) = 0, from a linear
/// finite element pencil with `n` intervals and Sturm bisection.
inline std::vector<double> fd_robin_eigenvalues(double a, double alpha, double beta, int n,
                                                int count) {
  const double h = a / n;
  std::vector<double> kd(n + 1, 2.0 / h), ko(n, -1.0 / h);
  std::vector<double> md(n + 1, 2.0 * h / 3.0), mo(n, h / 6.0);
  kd.front() = 1.0 / h - alpha;
  kd.back() = 1.0 / h + beta;
  md.front() = h / 3.0;
  md.back() = h / 3.0;
  const double bound = std::max(std::abs(alpha), std::abs(beta)) + 2.0;
  std::vector<double> out;
  for (int k = 1; k <= count; ++k)
    out.push_back(strip::pencil_kth_eigenvalue(kd, ko, md, mo, k, -bound * bound,
                                               200.0 / (a * a)));
  return out;
}

/// Number of FD eigenvalues strictly below `x`.
inline int fd_robin_count_below(double a, double alpha, double beta, int n, double x) {
  const double h = a / n;
  std::vector<double> kd(n + 1, 2.0 / h), ko(n, -1.0 / h);
  std::vector<double> md(n + 1, 2.0 * h / 3.0), mo(n, h / 6.0);
  kd.front() = 1.0 / h - alpha;
  kd.back() = 1.0 / h + beta;
  md.front() = h / 3.0;
  md.back() = h / 3.0;
  return strip::pencil_count_below(kd, ko, md, mo, x);
}

/// Brute-force dual-definition Orlicz/average norm on a small instance:
/// maximize sum f_i g_i w_i subject to sum A(g_i) w_i <= budget, by grid
/// search over g with iterative zoom. Intended for <= 3 nodes.
inline double dual_sup_norm(const std::vector<double>& f, const std::vector<double>& w,
                            double budget, int grid = 200, int zooms = 3) {
  const std::size_t m = f.size();
  auto a_eval = [](double s) { return std::expm1(std::abs(s)) - std::abs(s); };
  auto a_inv = [&](double y) {
    double lo = 0.0, hi = 1.0;
    while (a_eval(hi) < y) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (a_eval(mid) < y ? lo : hi) = mid;
    }
    return hi;
  };
  std::vector<double> lo(m, 0.0), hi(m);
  for (std::size_t i = 0; i < m; ++i) hi[i] = w[i] > 0.0 ? a_inv(budget / w[i]) : 0.0;

  double best = 0.0;
  std::vector<double> best_g(m, 0.0);
  for (int zoom = 0; zoom < zooms; ++zoom) {
    std::vector<std::vector<double>> gv(m), av(m);
    for (std::size_t i = 0; i < m; ++i) {
      gv[i].resize(grid + 1);
      av[i].resize(grid + 1);
      for (int k = 0; k <= grid; ++k) {
        gv[i][k] = lo[i] + (hi[i] - lo[i]) * k / grid;
        av[i][k] = a_eval(gv[i][k]) * w[i];
      }
    }
    std::vector<int> idx(m, 0);
    std::vector<int> best_idx(m, 0);
    for (;;) {
      double obj = 0.0, cst = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        obj += std::abs(f[i]) * gv[i][idx[i]] * w[i];
        cst += av[i][idx[i]];
      }
      if (cst <= budget && obj > best) {
        best = obj;
        best_idx = idx;
        for (std::size_t i = 0; i < m; ++i) best_g[i] = gv[i][idx[i]];
      }
      std::size_t d = 0;
      while (d < m && ++idx[d] > grid) idx[d++] = 0;
      if (d == m) break;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double step = (hi[i] - lo[i]) / grid;
      lo[i] = std::max(0.0, best_g[i] - 2.0 * step);
      hi[i] = best_g[i] + 2.0 * step;
    }
  }
  return best;
}

/// Negative-eigenvalue count of -u'' - q(x) u on (-L, L) with Dirichlet ends
/// by Sturm oscillation: interior zeros of the lambda = 0 solution.
inline int shooting_count_1d(const std::function<double(double)>& q, double L, double step) {
  double x = -L;
  double u = 0.0, up = 1.0;
  int zeros = 0;
  double prev_u = 0.0;
  auto rhs = [&](double xx, double uu) { return -q(xx) * uu; };
  while (x < L - 0.5 * step) {
    // RK4 for u' = v, v' = -q u
    const double k1u = up, k1v = rhs(x, u);
    const double k2u = up + 0.5 * step * k1v, k2v = rhs(x + 0.5 * step, u + 0.5 * step * k1u);
    const double k3u = up + 0.5 * step * k2v, k3v = rhs(x + 0.5 * step, u + 0.5 * step * k2u);
    const double k4u = up + step * k3v, k4v = rhs(x + step, u + step * k3u);
    prev_u = u;
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    up += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    x += step;
    if (x > -L + 0.5 * step && prev_u != 0.0 && std::signbit(u) != std::signbit(prev_u)) ++zeros;
  }
  return zeros;
}

}  // namespace oracles
