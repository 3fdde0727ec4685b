#pragma once

#include <utility>
#include <vector>

#include "strip/geometry.hpp"

namespace strip {

enum class EigenBranch { Trigonometric, Affine, Hyperbolic, DirichletSine };

/// First two eigenvalues and normalized ground state of -u'' = lambda u on
/// (0, a) with the cross-sectional boundary conditions.
struct CrossSection {
  StripGeometry geometry;
  double lambda1 = 0.0;
  double lambda2 = 0.0;   // second eigenvalue of the 1D cross-section problem
  EigenBranch branch = EigenBranch::Trigonometric;
  double alpha = 0.0;     // Robin parameter entering the closed form
  double norm_const = 1.0;
  std::vector<std::pair<double, double>> u1_samples;  // (x2, u1(x2))

  /// Ground state, L^2(0,a)-normalized, positive on (0, a).
  double u1(double x2) const;
  double u1_prime(double x2) const;

  /// Second eigenvalue of the cell form on (n, n+1) x (0, a) with natural
  /// (Neumann) behaviour in x1: min{lambda2, lambda1 + pi^2}.
  double cell_lambda2() const;
};

/// Characteristic function of the Robin problem: continuous in lambda, zero
/// exactly at the eigenvalues. Throws for Dirichlet geometry.
double secular_value(const StripGeometry& geometry, double lambda);

/// Locates lambda1 < lambda2 by scanning the secular function and bisection,
/// then normalizes u1. Dirichlet is closed-form.
CrossSection first_two_eigenpairs(const StripGeometry& geometry, double tol = 1e-12);

double cell_lambda2(const StripGeometry& geometry);

}  // namespace strip
