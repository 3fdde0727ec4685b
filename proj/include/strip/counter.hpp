#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <tuple>
#include <vector>

#include "strip/bound.hpp"
#include "strip/cross_section.hpp"
#include "strip/measure.hpp"
#include "strip/potential.hpp"

namespace strip {

/// Discretized quadratic form E_{lambda1, mu, S} on bilinear elements over
/// [-L, L] x [0, a], Dirichlet-clamped at x1 = +-L.
struct DiscreteForm {
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseMatrix<double> gram;  // L^2 mass matrix on the same basis
  double half_length = 0.0;
  double h = 0.0;
};

struct InertiaResult {
  int n_neg = 0, n_zero = 0, n_pos = 0;
  double zero_tolerance = 0.0;
  bool stable = true;
  std::vector<std::tuple<double, double, int>> refinement_trace;  // (h, L, n_neg)
};

struct CountControls {
  double half_length = 8.0;
  double h = 0.125;
  int max_refinements = 4;
  double resolution = 0.05;  // measure quadrature resolution
};

struct ProjectionSplitReport {
  double h = 0.0;
  int trials = 0;
  double max_inner_residual = 0.0;   // |<v, vtilde>| / ||u||^2
  double max_energy_residual = 0.0;  // |E[u] - E[v] - E[vt]| / (|E[u]| + ||u||^2)
  double max_gap_violation = 0.0;    // relative violation of the spectral gap
};

struct TestFunctionEnergy {
  double energy = 0.0;          // E_S[v_n] - lambda1 ||v_n||^2, exact piecewise value
  double potential_term = 0.0;  // int V |v_n|^2 dmu
  double f_n = 0.0;             // dyadic window mass F_n
  bool binds = false;           // F_n > 5 guarantees a negative direction
};

DiscreteForm assemble_form(const StripGeometry& geometry, const CrossSection& cs,
                           const Measure& mu, const Potential& V, double half_length, double h,
                           double resolution);

/// Inertia of the form matrix: sparse LDL^T for large problems, dense
/// Bunch-Kaufman for small ones, dense fallback on factorization breakdown.
InertiaResult inertia(const Eigen::SparseMatrix<double>& matrix);
inline InertiaResult inertia(const DiscreteForm& form) { return inertia(form.matrix); }

/// Assemble + inertia with mesh refinement (halve h, then double L) until the
/// negative count is unchanged across two successive refinements.
InertiaResult count_negative(const StripGeometry& geometry, const CrossSection& cs,
                             const Measure& mu, const Potential& V,
                             const CountControls& controls);

/// Negative-eigenvalue count of -d^2/dx1^2 - 2 nu on (-L, L), linear elements,
/// Dirichlet clamp at the ends; nu atoms enter through exact nodal basis
/// products.
int count_negative_1d(const NuMeasure& nu, double half_length, double h);

/// Numerical check of the projection split u = Pu + (I-P)u on a unit cell:
/// L^2 orthogonality, energy additivity, and the spectral-gap inequality on
/// the orthogonal complement. Failures are reported, never thrown.
ProjectionSplitReport verify_projection_split(const StripGeometry& geometry,
                                              const CrossSection& cs, double h, int trials,
                                              std::uint64_t seed);

/// Energy of the tent test function v_n(x) = w_n(x1) u1(x2) by exact piecewise
/// integration, plus its potential term against mu.
TestFunctionEnergy testfunction_energy(const StripGeometry& geometry, const CrossSection& cs,
                                       const Potential& V, const Measure& mu, int n,
                                       double resolution);

}  // namespace strip
