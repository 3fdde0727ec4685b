#pragma once

#include <functional>
#include <map>
#include <vector>

#include "strip/cross_section.hpp"
#include "strip/measure.hpp"
#include "strip/orlicz.hpp"
#include "strip/potential.hpp"

namespace strip {

// Explicit constants of the one-dimensional estimate
// N <= 1 + 7.61 sum_{F_n > 0.046} sqrt(F_n).
inline constexpr double kOneDimCoefficient = 7.61;
inline constexpr double kOneDimThreshold = 0.046;

/// Dyadic window I_n: [2^{n-1}, 2^n] for n > 0, [-1, 1] for n = 0, mirrored
/// for n < 0.
struct DyadicWindow {
  int n;
  double lo, hi;
  static DyadicWindow of_index(int n);
  /// Window index owning the point x; interior boundaries are assigned to the
  /// window of smaller |n| (half-open convention, no double counting).
  static int index_of(double x);
};

/// 1D measure on the x1-axis: pushforward of V |u1|^2 dmu, as weighted atoms.
struct NuMeasure {
  std::vector<std::pair<double, double>> atoms;  // (x1, weight), sorted by x1
  double half_length = 0.0;                      // truncation range [-L, L]
  double mass_deficit = 0.0;                     // dropped mass outside the range
};

struct BoundReport {
  std::map<int, double> f_terms;
  std::map<int, double> m_terms;
  double c_f = kOneDimThreshold;
  double coeff_f = kOneDimCoefficient;
  double c_m = kOneDimThreshold;
  double coeff_m = 1.0;
  double rhs_1d = 1.0;
  double rhs_total = 1.0;
  double weak_l1 = 0.0;
  int n_min = 0, n_max = 0;
};

struct LebesgueRefinement {
  std::map<int, double> d_terms;     // D_n per unit cell J_n = (n, n+1)
  std::map<int, double> m_terms;     // M_n of the same cells for comparison
  double v_star_norm = 0.0;          // integral of the per-slice norm of V - G
};

struct SweepPoint {
  double gamma;
  int n_neg;
  double rhs_1d;
  double weak_l1;
  int windows_over_5;  // card{n : gamma F_n > 5}
};

NuMeasure build_nu(const Potential& V, const CrossSection& cs, const Measure& mu,
                   double half_length, double resolution);

/// F_n = sum over atoms in I_n of |x1| w (of w for n = 0).
double dyadic_F(const NuMeasure& nu, int n);

/// All nonzero F_n within |n| <= n_max.
std::map<int, double> dyadic_F_all(const NuMeasure& nu, int n_max);

/// Orlicz norm of V over the closed cell [n, n+1] x [0, a] against mu.
double cell_M(const Potential& V, const Measure& mu, int n, const StripGeometry& geometry,
              double resolution);

BoundReport assemble_bound(const std::map<int, double>& f_terms,
                           const std::map<int, double>& m_terms, double c_m, double coeff_m);

/// Weak-l1 (Lorentz) quasinorm sup_s s card{n : |a_n| > s}, computed exactly
/// as max_k k |a|_(k) over the sorted absolute values.
double weak_l1(const std::vector<double>& seq);

/// Lebesgue-measure refinement of Remark 6.2: per-cell D_n, the split
/// V_* = V - G with G(x1) = int V |u1|^2 dx2, and cell norms for the
/// D_n <= 4 M_n comparison.
LebesgueRefinement lebesgue_refinement(const Potential& V, const StripGeometry& geometry,
                                       const CrossSection& cs, int n_lo, int n_hi,
                                       double resolution);

/// Coupling sweep: for each gamma evaluates the counting oracle and the
/// explicit 1D right-hand side for gamma V.
std::vector<SweepPoint> gamma_sweep(const Potential& V, const Measure& mu,
                                    const CrossSection& cs, const std::vector<double>& gammas,
                                    double half_length, double resolution, int n_max,
                                    const std::function<int(double)>& count_oracle);

}  // namespace strip
