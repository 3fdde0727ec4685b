#pragma once

#include <vector>

#include "strip/measure.hpp"

namespace strip {

/// The N-function pair used throughout:
///   A(s) = e^|s| - 1 - |s|,   B(s) = (1 + |s|) ln(1 + |s|) - |s|.
/// A and B are mutually complementary; B is the one entering the norms of
/// the potential.
double a_eval(double s);
double b_eval(double s);

enum class NormKind { Luxemburg, Orlicz, Average };

/// Function values at quadrature nodes. Zero-weight nodes are dropped at
/// construction.
struct NormRequest {
  std::vector<double> f_values;
  std::vector<double> weights;
  NormKind kind = NormKind::Luxemburg;

  static NormRequest make(std::vector<double> f_values, const QuadratureRule& rule, NormKind kind);
};

/// Luxemburg gauge inf{kappa : sum w B(|f|/kappa) <= 1}, by monotone bisection.
double luxemburg_norm(const NormRequest& req);

/// Orlicz (dual) norm via the Amemiya representation
/// inf_{k>0} (1 + sum w B(k |f|)) / k.
double orlicz_norm(const NormRequest& req);

/// Average norm of Solomyak: the dual constraint budget is mu(Omega) instead
/// of 1; computed as inf_{k>0} (omega_mass + sum w B(k |f|)) / k.
double average_norm(const NormRequest& req, double omega_mass);

}  // namespace strip
