#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace strip {

/// Inertia of a symmetric tridiagonal matrix via the LDL^T / Sturm pivot
/// recurrence. Zero pivots are perturbed by a tiny multiple of the scale, the
/// standard spectrum-slicing safeguard.
struct TridiagInertia {
  int n_neg = 0, n_zero = 0, n_pos = 0;
};

inline TridiagInertia tridiag_inertia(const std::vector<double>& diag,
                                      const std::vector<double>& off, double zero_tol = 0.0) {
  TridiagInertia r;
  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  for (double e : off) scale = std::max(scale, std::abs(e));
  if (zero_tol <= 0.0) zero_tol = 1e-14 * scale;
  double prev = 1.0;  // previous pivot
  double d = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double b = i > 0 ? off[i - 1] : 0.0;
    d = diag[i] - b * b / prev;
    if (std::abs(d) <= zero_tol) {
      ++r.n_zero;
      prev = (d >= 0.0 ? 1.0 : -1.0) * std::max(std::abs(d), 1e-300);
      continue;
    }
    (d < 0.0 ? r.n_neg : r.n_pos)++;
    prev = d;
  }
  return r;
}

/// Number of eigenvalues of the pencil (K, M) strictly below `shift`, where K
/// and M are symmetric tridiagonal and M is positive definite.
inline int pencil_count_below(const std::vector<double>& k_diag, const std::vector<double>& k_off,
                              const std::vector<double>& m_diag, const std::vector<double>& m_off,
                              double shift) {
  std::vector<double> d(k_diag.size()), e(k_off.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = k_diag[i] - shift * m_diag[i];
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = k_off[i] - shift * m_off[i];
  return tridiag_inertia(d, e).n_neg;
}

/// k-th smallest eigenvalue (k = 1, 2, ...) of the pencil (K, M) by bisection
/// on the slicing count.
inline double pencil_kth_eigenvalue(const std::vector<double>& k_diag,
                                    const std::vector<double>& k_off,
                                    const std::vector<double>& m_diag,
                                    const std::vector<double>& m_off, int k, double lo, double hi,
                                    double tol = 1e-12) {
  while (pencil_count_below(k_diag, k_off, m_diag, m_off, lo) >= k) lo = lo * 2.0 - hi;
  while (pencil_count_below(k_diag, k_off, m_diag, m_off, hi) < k) hi = hi * 2.0 - lo;
  for (int it = 0; it < 400 && (hi - lo) > tol * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pencil_count_below(k_diag, k_off, m_diag, m_off, mid) >= k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace strip
