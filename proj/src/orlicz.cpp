#include "strip/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strip {

double a_eval(double s) {
  s = std::abs(s);
  // expm1 keeps e^s - 1 - s accurate for small s; beyond s ~ 709 the value
  // saturates to +inf, which the callers treat as an infeasible scale.
  return std::expm1(s) - s;
}

double b_eval(double s) {
  s = std::abs(s);
  if (s < 1e-4) {
    // (1+s)ln(1+s) - s = sum_{k>=2} (-1)^k s^k / (k(k-1))
    return s * s * (1.0 / 2.0 + s * (-1.0 / 6.0 + s * (1.0 / 12.0 + s * (-1.0 / 20.0))));
  }
  return (1.0 + s) * std::log1p(s) - s;
}

NormRequest NormRequest::make(std::vector<double> f_values, const QuadratureRule& rule,
                              NormKind kind) {
  if (f_values.size() != rule.weights.size())
    throw std::invalid_argument("NormRequest: f_values and rule size mismatch");
  NormRequest req;
  req.kind = kind;
  for (std::size_t i = 0; i < f_values.size(); ++i) {
    const double w = rule.weights[i];
    if (w < 0.0) throw std::invalid_argument("NormRequest: negative quadrature weight");
    if (!std::isfinite(f_values[i])) throw std::invalid_argument("NormRequest: non-finite f value");
    if (w == 0.0) continue;
    req.f_values.push_back(f_values[i]);
    req.weights.push_back(w);
  }
  return req;
}

namespace {

double modular(const NormRequest& req, double scale) {
  double s = 0.0;
  for (std::size_t i = 0; i < req.f_values.size(); ++i)
    s += req.weights[i] * b_eval(scale * req.f_values[i]);
  return s;
}

double max_abs_f(const NormRequest& req) {
  double m = 0.0;
  for (double f : req.f_values) m = std::max(m, std::abs(f));
  return m;
}

// Minimizes the Amemiya objective (budget + sum w B(k|f|)) / k over k > 0 by
// bracket expansion and golden-section search on log k. The objective is
// unimodal in k.
double amemiya(const NormRequest& req, double budget) {
  const double fmax = max_abs_f(req);
  if (fmax == 0.0) return 0.0;
  auto obj = [&](double logk) {
    const double k = std::exp(logk);
    return (budget + modular(req, k)) / k;
  };
  double lo = std::log(1.0 / fmax), hi = lo;
  double flo = obj(lo);
  double fhi = flo;
  const double step = std::log(4.0);
  for (int i = 0; i < 200; ++i) {
    const double cand = lo - step;
    const double fc = obj(cand);
    if (fc >= flo) break;
    lo = cand;
    flo = fc;
  }
  for (int i = 0; i < 200; ++i) {
    const double cand = hi + step;
    const double fc = obj(cand);
    if (!std::isfinite(fc) || fc >= fhi) break;
    hi = cand;
    fhi = fc;
  }
  lo -= step;
  hi += step;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = obj(x1), f2 = obj(x2);
  for (int it = 0; it < 300 && (hi - lo) > 1e-13; ++it) {
    if (f1 <= f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = obj(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = obj(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

double luxemburg_norm(const NormRequest& req) {
  const double fmax = max_abs_f(req);
  if (fmax == 0.0 || req.f_values.empty()) return 0.0;
  // I(kappa) = sum w B(|f|/kappa) is strictly decreasing in kappa where
  // positive; bracket the root of I = 1 by doubling/halving from max|f|.
  double kappa = fmax;
  double lo = kappa, hi = kappa;
  if (modular(req, 1.0 / kappa) > 1.0) {
    for (int i = 0; i < 200 && modular(req, 1.0 / hi) > 1.0; ++i) hi *= 4.0;
  } else {
    for (int i = 0; i < 200 && modular(req, 1.0 / lo) <= 1.0; ++i) lo /= 4.0;
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modular(req, 1.0 / mid) > 1.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double orlicz_norm(const NormRequest& req) { return amemiya(req, 1.0); }

double average_norm(const NormRequest& req, double omega_mass) {
  if (!(omega_mass > 0.0)) throw std::invalid_argument("average_norm: omega_mass must be positive");
  return amemiya(req, omega_mass);
}

}  // namespace strip
