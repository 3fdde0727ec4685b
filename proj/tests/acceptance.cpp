// Acceptance battery: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion pins its own tolerances.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "strip/bound.hpp"
#include "strip/counter.hpp"
#include "strip/cross_section.hpp"
#include "strip/measure.hpp"
#include "strip/orlicz.hpp"
#include "strip/potential.hpp"
#include "oracles.hpp"

using namespace strip;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d (%s): %s\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

StripGeometry make_robin(double a, double alpha, double beta) {
  StripGeometry g;
  g.a = a;
  g.bc = Robin{alpha, beta};
  return g;
}

StripGeometry make_dirichlet(double a) {
  StripGeometry g;
  g.a = a;
  g.bc = Dirichlet{};
  return g;
}

Measure one_component(MeasureComponent comp) {
  Measure m;
  m.components.emplace_back(1.0, std::move(comp));
  return m;
}

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// 1. Closed-form cross-section eigenvalues.
void criterion1() {
  const double tol = 1e-9;
  const auto neumann = first_two_eigenpairs(make_robin(1, 0, 0), 1e-13);
  const auto dir = first_two_eigenpairs(make_dirichlet(1), 1e-13);
  const auto sym = first_two_eigenpairs(make_robin(1, 1, 1), 1e-13);
  const double e1 = std::abs(neumann.lambda1);
  const double e2 = std::abs(neumann.lambda2 - kPi * kPi);
  const double e3 = std::abs(dir.lambda1 - kPi * kPi);
  const double e4 = std::abs(sym.lambda1 + 1.0);
  const bool pass = e1 < tol && e2 < tol && e3 < tol && e4 < tol;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max error %.2e over {Neumann l1, Neumann l2, Dirichlet l1, Robin(1,1) l1}",
                std::max({e1, e2, e3, e4}));
  report(1, "cross-section closed forms", pass, buf);
}

// 2. Generic Robin eigenvalues against the finite element oracle.
void criterion2() {
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double alpha = -3.0 + 1.5 * i, beta = -3.0 + 1.5 * j;
      const auto cs = first_two_eigenpairs(make_robin(1.0, alpha, beta), 1e-13);
      const auto fd = oracles::fd_robin_eigenvalues(1.0, alpha, beta, 2048, 2);
      const double r1 = std::abs(cs.lambda1 - fd[0]) / std::max(1.0, std::abs(fd[0]));
      const double r2 = std::abs(cs.lambda2 - fd[1]) / std::max(1.0, std::abs(fd[1]));
      worst = std::max({worst, r1, r2});
      pass = pass && r1 < 1e-5 && r2 < 1e-5;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "25 (alpha, beta) pairs, worst relative error %.2e", worst);
  report(2, "Robin eigenvalues vs FD oracle", pass, buf);
}

// 3. Orlicz norm chain (2.3), integral bound (2.7), indicator closed form.
void criterion3() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> fv(0.0, 6.0), wv(0.01, 2.0);
  std::uniform_int_distribution<int> len(1, 8);
  double worst_slack = 0.0;
  bool pass = true;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = len(rng);
    std::vector<double> f(m), w(m);
    QuadratureRule rule;
    for (int i = 0; i < m; ++i) {
      f[i] = fv(rng);
      w[i] = wv(rng);
      rule.nodes.push_back({0, 0});
      rule.weights.push_back(w[i]);
    }
    const double lux = luxemburg_norm(NormRequest::make(f, rule, NormKind::Luxemburg));
    const double orl = orlicz_norm(NormRequest::make(f, rule, NormKind::Orlicz));
    double modular = 0.0;
    for (int i = 0; i < m; ++i) modular += w[i] * b_eval(f[i]);
    const double s1 = orl - lux;                      // lux <= orl
    const double s2 = 2.0 * lux - orl;                // orl <= 2 lux
    const double s3 = std::max(1.0, modular) - lux;   // (2.7)
    worst_slack = std::min({s1, s2, s3, trial == 0 ? s1 : worst_slack});
    pass = pass && s1 >= -1e-9 && s2 >= -1e-9 && s3 >= -1e-9;
  }
  QuadratureRule unit;
  unit.nodes.push_back({0, 0});
  unit.weights.push_back(1.0);
  const double ind = luxemburg_norm(NormRequest::make({1.0}, unit, NormKind::Luxemburg));
  const double ind_err = std::abs(ind - 1.0 / (std::exp(1.0) - 1.0));
  pass = pass && ind_err < 1e-8;
  char buf[140];
  std::snprintf(buf, sizeof buf, "500 step functions, min slack %.2e; indicator error %.2e",
                worst_slack, ind_err);
  report(3, "Orlicz norm chain", pass, buf);
}

// 4. Amemiya infimum against the brute-force dual supremum.
void criterion4() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> fv(0.05, 4.0), wv(0.1, 1.5);
  double worst = 0.0;
  bool pass = true;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(3), w(3);
    QuadratureRule rule;
    for (int i = 0; i < 3; ++i) {
      f[i] = fv(rng);
      w[i] = wv(rng);
      rule.nodes.push_back({0, 0});
      rule.weights.push_back(w[i]);
    }
    const double lib = orlicz_norm(NormRequest::make(f, rule, NormKind::Orlicz));
    const double oracle = oracles::dual_sup_norm(f, w, 1.0, 120, 4);
    const double rel = std::abs(lib - oracle) / lib;
    worst = std::max(worst, rel);
    pass = pass && rel < 1e-3;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "50 three-node instances, worst relative gap %.2e", worst);
  report(4, "Amemiya vs dual supremum", pass, buf);
}

// 5. The explicit 1D inequality over a battery of configurations.
void criterion5() {
  struct Config {
    const char* label;
    StripGeometry geom;
    Measure mu;
    double depth;
  };
  auto leb = []() {
    return one_component(
        LebesgueDensity{Potential::from_expression("1"), Rect{-2.0, 2.0, 0.0, 1.0}});
  };
  auto midline = []() {
    return one_component(LineSegment{{-2.0, 0.5}, {2.0, 0.5}, [](double) { return 1.0; }});
  };
  auto cantor = []() { return one_component(CantorSegment{{-2.0, 0.5}, {2.0, 0.5}, 8, 2.0}); };

  std::vector<Config> battery;
  for (double depth : {1.0, 10.0, 100.0}) {
    battery.push_back({"dirichlet/lebesgue", make_dirichlet(1.0), leb(), depth});
    battery.push_back({"dirichlet/midline", make_dirichlet(1.0), midline(), depth});
    battery.push_back({"dirichlet/cantor", make_dirichlet(1.0), cantor(), depth});
  }
  for (auto geom : {make_robin(1.0, 1.0, 1.0), make_robin(1.0, -0.5, 0.5)}) {
    battery.push_back({"robin/lebesgue", geom, leb(), 10.0});
    battery.push_back({"robin/midline", geom, midline(), 10.0});
    battery.push_back({"robin/cantor", geom, cantor(), 10.0});
  }

  bool pass = true;
  int checked = 0;
  double tightest = 1e300;
  for (const auto& c : battery) {
    char expr[64];
    std::snprintf(expr, sizeof expr, "%.17g * indicator(x1, 0 - 2, 2)", c.depth);
    const Potential V = Potential::from_expression(expr);
    const auto cs = first_two_eigenpairs(c.geom, 1e-13);
    const NuMeasure nu = build_nu(V, cs, c.mu, 64.0, 0.02);
    const auto f = dyadic_F_all(nu, 12);
    const auto rep = assemble_bound(f, {}, kOneDimThreshold, 1.0);
    const int n1d = count_negative_1d(nu, 64.0, 1.0 / 64.0);
    pass = pass && static_cast<double>(n1d) <= rep.rhs_1d;
    tightest = std::min(tightest, rep.rhs_1d - n1d);
    ++checked;
  }
  char buf[140];
  std::snprintf(buf, sizeof buf, "%d configurations at L=64, h=1/64; min slack %.3f", checked,
                tightest);
  report(5, "explicit 1D sandwich", pass, buf);
}

// 6. Exact tent-function energies 5 * 2^n.
void criterion6() {
  const auto geom = make_robin(1.0, 0.0, 0.0);
  const auto cs = first_two_eigenpairs(geom, 1e-13);
  const Measure mu = one_component(
      LebesgueDensity{Potential::from_expression("1"), Rect{-1.0, 1.0, 0.0, 1.0}});
  double worst = 0.0;
  bool pass = true;
  for (int n = 1; n <= 6; ++n) {
    const auto e = testfunction_energy(geom, cs, Potential(), mu, n, 0.05);
    const double err = std::abs(e.energy - 5.0 * std::ldexp(1.0, n));
    worst = std::max(worst, err);
    pass = pass && err <= 1e-10;
  }
  char buf[100];
  std::snprintf(buf, sizeof buf, "n = 1..6, max deviation %.2e", worst);
  report(6, "test-function energies", pass, buf);
}

// 7. Witness lower bounds from three separated heavy windows.
void criterion7() {
  const auto geom = make_robin(1.0, 0.0, 0.0);
  const auto cs = first_two_eigenpairs(geom, 1e-13);
  // Three wells centered in windows n = 3, 6, 9 with F_n about 24, 15, 10.
  const Potential V = Potential::from_callable([](double x1, double) {
    if (x1 >= 4.0 && x1 <= 8.0) return 1.0;
    if (x1 >= 32.0 && x1 <= 64.0) return 0.01;
    if (x1 >= 256.0 && x1 <= 512.0) return 0.0001;
    return 0.0;
  });
  Measure mu;
  mu.components.emplace_back(
      1.0, LebesgueDensity{Potential::from_expression("1"), Rect{4.0, 8.0, 0.0, 1.0}});
  mu.components.emplace_back(
      1.0, LebesgueDensity{Potential::from_expression("1"), Rect{32.0, 64.0, 0.0, 1.0}});
  mu.components.emplace_back(
      1.0, LebesgueDensity{Potential::from_expression("1"), Rect{256.0, 512.0, 0.0, 1.0}});

  const NuMeasure nu = build_nu(V, cs, mu, 1024.0, 0.05);
  const auto f = dyadic_F_all(nu, 12);
  const bool windows_ok = f.count(3) && f.at(3) > 5.0 && f.count(6) && f.at(6) > 5.0 &&
                          f.count(9) && f.at(9) > 5.0;
  const int n1d = count_negative_1d(nu, 1024.0, 1.0 / 64.0);

  // 2D check on the first well only (the part inside a tractable mesh).
  Measure near;
  near.components.emplace_back(
      1.0, LebesgueDensity{Potential::from_expression("1"), Rect{4.0, 8.0, 0.0, 1.0}});
  const auto form = assemble_form(geom, cs, near, V, 64.0, 1.0 / 32.0, 0.05);
  const auto r2d = inertia(form);

  const bool pass = windows_ok && n1d >= 3 && r2d.n_neg >= 1;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "F_{3,6,9} = %.1f/%.1f/%.1f > 5; 1D count %d >= 3 at L=1024; 2D n_neg %d >= 1",
                f.count(3) ? f.at(3) : 0.0, f.count(6) ? f.at(6) : 0.0,
                f.count(9) ? f.at(9) : 0.0, n1d, r2d.n_neg);
  report(7, "witness lower bound", pass, buf);
}

// 8. Inertia against dense eigendecomposition on random matrices.
void criterion8() {
  std::mt19937_64 rng(303);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> size(5, 1000);
  bool pass = true;
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = gauss(rng);
    Eigen::SparseMatrix<double> s(n, n);
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.emplace_back(i, j, a(i, j));
    s.setFromTriplets(t.begin(), t.end());
    const auto r = inertia(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    int neg = 0;
    for (int i = 0; i < n; ++i)
      if (es.eigenvalues()[i] < -r.zero_tolerance) ++neg;
    if (neg != r.n_neg) {
      pass = false;
      ++mismatches;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "100 random matrices up to n = 1000, %d mismatches", mismatches);
  report(8, "inertia exactness", pass, buf);
}

// 9. Projection split residual magnitude and decay order.
void criterion9() {
  bool pass = true;
  double worst_res = 0.0, worst_order = 1e300;
  for (const auto& geom : {make_robin(1.0, 0.8, -0.3), make_dirichlet(1.0)}) {
    const auto cs = first_two_eigenpairs(geom, 1e-13);
    const auto c16 = verify_projection_split(geom, cs, 1.0 / 16.0, 100, 7);
    const auto c32 = verify_projection_split(geom, cs, 1.0 / 32.0, 100, 7);
    const double r16 = std::max(c16.max_inner_residual, c16.max_energy_residual);
    const double r32 = std::max(c32.max_inner_residual, c32.max_energy_residual);
    const double order = std::log2(r16 / r32);
    worst_res = std::max(worst_res, r32);
    worst_order = std::min(worst_order, order);
    pass = pass && r32 < 1e-6 && order >= 1.8 && c32.max_gap_violation == 0.0;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "residual %.2e at h=1/32, observed order %.2f", worst_res,
                worst_order);
  report(9, "projection split", pass, buf);
}

// 10. Ahlfors dimension recovery.
void criterion10() {
  const Measure leb = one_component(
      LebesgueDensity{Potential::from_expression("1"), Rect{-4.0, 4.0, 0.0, 1.0}});
  const Measure seg =
      one_component(LineSegment{{-4.0, 0.5}, {4.0, 0.5}, [](double) { return 1.0; }});
  const Measure can = one_component(CantorSegment{{0.0, 0.5}, {1.0, 0.5}, 12, 1.0});

  const double d_leb = ahlfors_fit(leb, 300, 0.01, 0.1, 11).d_hat;
  const double d_seg = ahlfors_fit(seg, 300, 0.01, 0.1, 11).d_hat;
  const double d_can = ahlfors_fit(can, 300, 0.005, 0.2, 11).d_hat;
  const double e1 = std::abs(d_leb - 2.0);
  const double e2 = std::abs(d_seg - 1.0);
  const double e3 = std::abs(d_can - std::log(2.0) / std::log(3.0));
  const bool pass = e1 < 0.05 && e2 < 0.05 && e3 < 0.05;
  char buf[160];
  std::snprintf(buf, sizeof buf, "d_hat = %.3f (leb), %.3f (segment), %.3f (cantor)", d_leb,
                d_seg, d_can);
  report(10, "Ahlfors fits", pass, buf);
}

// 11. Semiclassical O(gamma) behavior of the 2D count.
void criterion11() {
  const auto geom = make_robin(1.0, 0.0, 0.0);
  const auto cs = first_two_eigenpairs(geom, 1e-13);
  // Smooth compactly supported bump, mu planar Lebesgue on its support.
  const Potential V = Potential::from_expression(
      "4 * (1 + cos(pi * x1 / 4)) * indicator(x1, 0 - 4, 4)");
  const Measure mu = one_component(
      LebesgueDensity{Potential::from_expression("1"), Rect{-4.0, 4.0, 0.0, 1.0}});

  auto count2d = [&](double gamma) {
    char expr[96];
    std::snprintf(expr, sizeof expr,
                  "%.17g * (1 + cos(pi * x1 / 4)) * indicator(x1, 0 - 4, 4)", 4.0 * gamma);
    const Potential Vg = Potential::from_expression(expr);
    return inertia(assemble_form(geom, cs, mu, Vg, 8.0, 1.0 / 32.0, 0.02)).n_neg;
  };
  const int n8 = count2d(8.0);
  const int n16 = count2d(16.0);
  const double ratio8 = n8 / 8.0, ratio16 = n16 / 16.0;
  const double variation = std::abs(ratio16 - ratio8) / ratio8;

  // weak-l1 of the window masses, stable when the window range is extended.
  const NuMeasure nu = build_nu(V, cs, mu, 8.0, 0.02);
  auto wl1 = [&](int n_max) {
    std::vector<double> fs;
    for (const auto& [n, f] : dyadic_F_all(nu, n_max)) fs.push_back(f);
    return weak_l1(fs);
  };
  const double w8 = wl1(8), w16 = wl1(16);
  const bool pass = n8 > 0 && variation < 0.30 && std::isfinite(w8) && w8 > 0.0 && w8 == w16;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "N(8)=%d, N(16)=%d, N/gamma variation %.1f%%; weak-l1 %.3f stable", n8, n16,
                100.0 * variation, w8);
  report(11, "semiclassical sweep", pass, buf);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/11 criteria passed in %.1f s\n", 11 - g_failures, dt);
  return g_failures == 0 ? 0 : 1;
}
