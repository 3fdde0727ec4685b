#include "strip/counter.hpp"

#include <lapacke.h>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "strip/tridiag.hpp"

namespace strip {

namespace {

using Triplet = Eigen::Triplet<double>;

// 4x4 element matrices of a bilinear element on an h x h square, local node
// order (0,0), (1,0), (1,1), (0,1), computed by 2x2 Gauss (exact here).
struct ElementMatrices {
  std::array<std::array<double, 4>, 4> stiffness{};
  std::array<std::array<double, 4>, 4> mass{};
};

ElementMatrices element_matrices(double h) {
  ElementMatrices em;
  const double g = 0.5 / std::sqrt(3.0);
  const std::array<double, 2> pts{0.5 - g, 0.5 + g};
  for (double xi : pts) {
    for (double eta : pts) {
      const std::array<double, 4> N{(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta,
                                    (1 - xi) * eta};
      const std::array<double, 4> dNdx{-(1 - eta) / h, (1 - eta) / h, eta / h, -eta / h};
      const std::array<double, 4> dNdy{-(1 - xi) / h, -xi / h, xi / h, (1 - xi) / h};
      const double jac = 0.25 * h * h;  // Gauss weight (1/4) times |J|
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          em.stiffness[i][j] += (dNdx[i] * dNdx[j] + dNdy[i] * dNdy[j]) * jac;
          em.mass[i][j] += N[i] * N[j] * jac;
        }
      }
    }
  }
  return em;
}

int checked_divisions(double length, double h, const char* what) {
  const double q = length / h;
  const int n = static_cast<int>(std::llround(q));
  if (n < 1 || std::abs(q - n) > 1e-9 * q)
    throw std::invalid_argument(std::string("mesh spacing h does not divide ") + what);
  return n;
}

InertiaResult count_signs(const std::vector<double>& d, double zero_tol) {
  InertiaResult r;
  r.zero_tolerance = zero_tol;
  for (double v : d) {
    if (std::abs(v) <= zero_tol) ++r.n_zero;
    else (v < 0.0 ? r.n_neg : r.n_pos)++;
  }
  return r;
}

// Dense Bunch-Kaufman inertia (LAPACK dsytrf, lower storage).
InertiaResult dense_inertia(const Eigen::SparseMatrix<double>& matrix, double zero_tol) {
  const int n = static_cast<int>(matrix.rows());
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it)
      a[static_cast<std::size_t>(it.col()) * n + it.row()] = it.value();
  std::vector<lapack_int> ipiv(n);
  const lapack_int info =
      LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0) throw std::runtime_error("dsytrf: invalid argument");

  InertiaResult r;
  r.zero_tolerance = zero_tol;
  int k = 0;
  while (k < n) {
    if (ipiv[k] > 0) {
      const double d = a[static_cast<std::size_t>(k) * n + k];
      if (std::abs(d) <= zero_tol) ++r.n_zero;
      else (d < 0.0 ? r.n_neg : r.n_pos)++;
      ++k;
    } else {
      const double d11 = a[static_cast<std::size_t>(k) * n + k];
      const double d21 = a[static_cast<std::size_t>(k) * n + k + 1];
      const double d22 = a[static_cast<std::size_t>(k + 1) * n + k + 1];
      const double tr = d11 + d22;
      const double det = d11 * d22 - d21 * d21;
      const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
      for (double lam : {0.5 * (tr - disc), 0.5 * (tr + disc)}) {
        if (std::abs(lam) <= zero_tol) ++r.n_zero;
        else (lam < 0.0 ? r.n_neg : r.n_pos)++;
      }
      k += 2;
    }
  }
  return r;
}

double max_abs_coeff(const Eigen::SparseMatrix<double>& m) {
  double mx = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      mx = std::max(mx, std::abs(it.value()));
  return mx;
}

// Piecewise-linear tent profile of Theorem 6.2: ramps up over
// [2^{n-2}, 2^{n-1}], plateau 2^n on [2^{n-1}, 2^n], ramps down to 2^{n+1}.
double tent_profile(int n, double x1) {
  const double q = std::ldexp(1.0, n - 2);  // 2^{n-2}
  if (x1 <= q || x1 >= 8.0 * q) return 0.0;
  if (x1 < 2.0 * q) return 4.0 * (x1 - q);
  if (x1 <= 4.0 * q) return 4.0 * q;  // 2^n
  return 8.0 * q - x1;
}

// Composite Boole weights for n+1 points (n a multiple of 4), spacing h.
std::vector<double> boole_weights(int n, double h) {
  std::vector<double> w(n + 1, 0.0);
  for (int s = 0; s + 4 <= n; s += 4) {
    w[s] += 7.0;
    w[s + 1] += 32.0;
    w[s + 2] += 12.0;
    w[s + 3] += 32.0;
    w[s + 4] += 7.0;
  }
  for (double& v : w) v *= 2.0 * h / 45.0;
  return w;
}

}  // namespace

DiscreteForm assemble_form(const StripGeometry& geometry, const CrossSection& cs,
                           const Measure& mu, const Potential& V, double half_length, double h,
                           double resolution) {
  geometry.validate();
  mu.validate(geometry);
  if (!(half_length >= 4.0)) throw std::invalid_argument("assemble_form: half_length must be >= 4");
  const int nx = checked_divisions(2.0 * half_length, h, "2L");
  const int ny = checked_divisions(geometry.a, h, "a");
  const bool clamp_x2 = geometry.is_dirichlet();

  // Global dof indices; -1 marks clamped nodes (x1 = +-L, and x2 boundary for
  // Dirichlet cross-sections).
  std::vector<int> dof(static_cast<std::size_t>(nx + 1) * (ny + 1), -1);
  auto node = [&](int ix, int iy) { return static_cast<std::size_t>(ix) * (ny + 1) + iy; };
  int ndof = 0;
  for (int ix = 1; ix < nx; ++ix)
    for (int iy = 0; iy <= ny; ++iy) {
      if (clamp_x2 && (iy == 0 || iy == ny)) continue;
      dof[node(ix, iy)] = ndof++;
    }

  const ElementMatrices em = element_matrices(h);
  std::vector<Triplet> ta, tg;
  ta.reserve(static_cast<std::size_t>(nx) * ny * 16);
  tg.reserve(ta.capacity());

  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const std::array<int, 4> gdof{dof[node(ix, iy)], dof[node(ix + 1, iy)],
                                    dof[node(ix + 1, iy + 1)], dof[node(ix, iy + 1)]};
      for (int i = 0; i < 4; ++i) {
        if (gdof[i] < 0) continue;
        for (int j = 0; j < 4; ++j) {
          if (gdof[j] < 0) continue;
          ta.emplace_back(gdof[i], gdof[j],
                          em.stiffness[i][j] - cs.lambda1 * em.mass[i][j]);
          tg.emplace_back(gdof[i], gdof[j], em.mass[i][j]);
        }
      }
    }
  }

  if (!clamp_x2) {
    const auto& r = geometry.robin();
    const double e0 = h / 3.0, e1 = h / 6.0;
    for (int ix = 0; ix < nx; ++ix) {
      const std::array<int, 2> bottom{dof[node(ix, 0)], dof[node(ix + 1, 0)]};
      const std::array<int, 2> top{dof[node(ix, ny)], dof[node(ix + 1, ny)]};
      const std::array<std::array<double, 2>, 2> edge{{{e0, e1}, {e1, e0}}};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          if (bottom[i] >= 0 && bottom[j] >= 0)
            ta.emplace_back(bottom[i], bottom[j], -r.alpha * edge[i][j]);
          if (top[i] >= 0 && top[j] >= 0) ta.emplace_back(top[i], top[j], r.beta * edge[i][j]);
        }
    }
  }

  // Potential term: -V(x) w_q at each measure quadrature node, exact nodal
  // basis products (no lumping), so line measures on x2 in {0, a} act through
  // the boundary nodal values.
  const Rect window{-half_length, half_length, 0.0, geometry.a};
  const QuadratureRule rule = quadrature(mu, window, resolution);
  {
    const Rect bb = mu.bounding_box();
    if (bb.x1_lo < -half_length - 1e-12 || bb.x1_hi > half_length + 1e-12) {
      std::ostringstream msg;
      msg << "assemble_form: measure support [" << bb.x1_lo << ", " << bb.x1_hi
          << "] extends beyond the mesh [-" << half_length << ", " << half_length << "]";
      throw std::invalid_argument(msg.str());
    }
  }
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Point& p = rule.nodes[q];
    const double coeff = V(p.x1, p.x2) * rule.weights[q];
    if (coeff == 0.0) continue;
    int ix = std::min(nx - 1, static_cast<int>((p.x1 + half_length) / h));
    int iy = std::min(ny - 1, static_cast<int>(p.x2 / h));
    ix = std::max(0, ix);
    iy = std::max(0, iy);
    const double xi = (p.x1 + half_length - ix * h) / h;
    const double eta = (p.x2 - iy * h) / h;
    const std::array<double, 4> N{(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta, (1 - xi) * eta};
    const std::array<int, 4> gdof{dof[node(ix, iy)], dof[node(ix + 1, iy)],
                                  dof[node(ix + 1, iy + 1)], dof[node(ix, iy + 1)]};
    for (int i = 0; i < 4; ++i) {
      if (gdof[i] < 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (gdof[j] < 0) continue;
        ta.emplace_back(gdof[i], gdof[j], -coeff * N[i] * N[j]);
      }
    }
  }

  DiscreteForm form;
  form.half_length = half_length;
  form.h = h;
  form.matrix.resize(ndof, ndof);
  form.matrix.setFromTriplets(ta.begin(), ta.end());
  form.gram.resize(ndof, ndof);
  form.gram.setFromTriplets(tg.begin(), tg.end());
  return form;
}

InertiaResult inertia(const Eigen::SparseMatrix<double>& matrix) {
  const Eigen::Index n = matrix.rows();
  const double zero_tol = 1e-10 * max_abs_coeff(matrix);
  if (n == 0) return InertiaResult{};

  if (n <= 2000) return dense_inertia(matrix, zero_tol);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(matrix);
  if (ldlt.info() == Eigen::Success) {
    const auto d = ldlt.vectorD();
    bool finite = true;
    std::vector<double> dv(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      dv[i] = d[i];
      if (!std::isfinite(d[i])) { finite = false; break; }
    }
    if (finite) return count_signs(dv, zero_tol);
  }
  if (n <= 4000) return dense_inertia(matrix, zero_tol);
  throw std::runtime_error("inertia: sparse factorization breakdown and matrix too large for dense fallback");
}

InertiaResult count_negative(const StripGeometry& geometry, const CrossSection& cs,
                             const Measure& mu, const Potential& V,
                             const CountControls& controls) {
  double L = controls.half_length;
  double h = controls.h;
  InertiaResult result;
  std::vector<std::tuple<double, double, int>> trace;
  for (int step = 0; step <= controls.max_refinements; ++step) {
    result = inertia(assemble_form(geometry, cs, mu, V, L, h, controls.resolution));
    trace.emplace_back(h, L, result.n_neg);
    const std::size_t k = trace.size();
    if (k >= 3 && std::get<2>(trace[k - 1]) == std::get<2>(trace[k - 2]) &&
        std::get<2>(trace[k - 2]) == std::get<2>(trace[k - 3])) {
      result.refinement_trace = trace;
      result.stable = true;
      return result;
    }
    if (step % 2 == 0) h *= 0.5;
    else L *= 2.0;
  }
  result.refinement_trace = trace;
  result.stable = false;
  return result;
}

int count_negative_1d(const NuMeasure& nu, double half_length, double h) {
  const int n = checked_divisions(2.0 * half_length, h, "2L");
  if (n < 2) throw std::invalid_argument("count_negative_1d: mesh too coarse");
  std::vector<double> diag(n - 1, 2.0 / h);
  std::vector<double> off(n - 2, -1.0 / h);
  for (const auto& [x, w] : nu.atoms) {
    if (std::abs(x) > half_length) continue;  // outside the truncation
    int j = std::min(n - 1, static_cast<int>((x + half_length) / h));
    j = std::max(0, j);
    const double t = (x + half_length - j * h) / h;
    // element (j, j+1): interior dofs are nodes 1..n-1 -> dof index = node-1
    const int left = j - 1, right = j;
    const double c = 2.0 * w;
    if (left >= 0) diag[left] -= c * (1.0 - t) * (1.0 - t);
    if (right <= n - 2) diag[right] -= c * t * t;
    if (left >= 0 && right <= n - 2) off[left] -= c * t * (1.0 - t);
  }
  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  return tridiag_inertia(diag, off, 1e-10 * scale).n_neg;
}

ProjectionSplitReport verify_projection_split(const StripGeometry& geometry,
                                              const CrossSection& cs, double h, int trials,
                                              std::uint64_t seed) {
  const double a = geometry.a;
  int n1 = checked_divisions(1.0, h, "the unit cell");
  int n2 = checked_divisions(a, h, "a");
  if (n1 % 4 || n2 % 4)
    throw std::invalid_argument("verify_projection_split: 1/h and a/h must be multiples of 4");
  const double h1 = 1.0 / n1, h2 = a / n2;
  const std::vector<double> w1 = boole_weights(n1, h1);
  const std::vector<double> w2 = boole_weights(n2, h2);

  std::vector<double> u1v(n2 + 1), u1p(n2 + 1);
  for (int j = 0; j <= n2; ++j) {
    u1v[j] = cs.u1(j * h2);
    u1p[j] = cs.u1_prime(j * h2);
  }

  const bool dir = geometry.is_dirichlet();
  const double alpha = dir ? 0.0 : geometry.robin().alpha;
  const double beta = dir ? 0.0 : geometry.robin().beta;
  const double gap = cs.cell_lambda2() - cs.lambda1;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);

  ProjectionSplitReport rep;
  rep.h = h;
  rep.trials = trials;

  using Grid = std::vector<std::vector<double>>;
  auto make_grid = [&]() { return Grid(n1 + 1, std::vector<double>(n2 + 1, 0.0)); };
  auto integrate2 = [&](const Grid& f, const Grid& g) {
    double s = 0.0;
    for (int i = 0; i <= n1; ++i) {
      double row = 0.0;
      for (int j = 0; j <= n2; ++j) row += w2[j] * f[i][j] * g[i][j];
      s += w1[i] * row;
    }
    return s;
  };
  // Form energy E_cell[f] from its value and partial grids.
  auto energy = [&](const Grid& f, const Grid& fx, const Grid& fy) {
    double e = integrate2(fx, fx) + integrate2(fy, fy);
    if (!dir) {
      for (int i = 0; i <= n1; ++i)
        e += w1[i] * (-alpha * f[i][0] * f[i][0] + beta * f[i][n2] * f[i][n2]);
    }
    return e;
  };

  for (int trial = 0; trial < trials; ++trial) {
    // Random trigonometric polynomial with analytic partials; for Dirichlet
    // cross-sections it is windowed to vanish on x2 in {0, a}.
    constexpr int M = 3;
    double c[M][M], ph1[M][M], ph2[M][M];
    for (int p = 0; p < M; ++p)
      for (int q = 0; q < M; ++q) {
        c[p][q] = coeff(rng);
        ph1[p][q] = phase(rng);
        ph2[p][q] = phase(rng);
      }
    auto base = [&](double x, double y, int dx, int dy) {
      double s = 0.0;
      for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) {
          const double wx = p, wy = q / a;
          double fx = dx == 0 ? std::cos(wx * x + ph1[p][q]) : -wx * std::sin(wx * x + ph1[p][q]);
          double fy = dy == 0 ? std::cos(wy * y + ph2[p][q]) : -wy * std::sin(wy * y + ph2[p][q]);
          s += c[p][q] * fx * fy;
        }
      return s;
    };
    auto uval = [&](double x, double y, int dx, int dy) {
      if (!dir) return base(x, y, dx, dy);
      const double b = 4.0 * y * (a - y) / (a * a);
      const double bp = 4.0 * (a - 2.0 * y) / (a * a);
      if (dy == 0) return base(x, y, dx, 0) * b;
      return base(x, y, 0, 1) * b + base(x, y, 0, 0) * bp;
    };

    Grid u = make_grid(), ux = make_grid(), uy = make_grid();
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        const double x = i * h1, y = j * h2;
        u[i][j] = uval(x, y, 0, 0);
        ux[i][j] = uval(x, y, 1, 0);
        uy[i][j] = uval(x, y, 0, 1);
      }

    // w(x1) = <u(x1, .), u1>, w'(x1) = <u_x1(x1, .), u1> by column quadrature.
    std::vector<double> w(n1 + 1, 0.0), wp(n1 + 1, 0.0);
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        w[i] += w2[j] * u[i][j] * u1v[j];
        wp[i] += w2[j] * ux[i][j] * u1v[j];
      }

    Grid v = make_grid(), vx = make_grid(), vy = make_grid();
    Grid t = make_grid(), tx = make_grid(), ty = make_grid();
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        v[i][j] = w[i] * u1v[j];
        vx[i][j] = wp[i] * u1v[j];
        vy[i][j] = w[i] * u1p[j];
        t[i][j] = u[i][j] - v[i][j];
        tx[i][j] = ux[i][j] - vx[i][j];
        ty[i][j] = uy[i][j] - vy[i][j];
      }

    const double norm_u = integrate2(u, u);
    const double norm_t = integrate2(t, t);
    const double inner = integrate2(v, t);
    const double eu = energy(u, ux, uy);
    const double ev = energy(v, vx, vy);
    const double et = energy(t, tx, ty);

    rep.max_inner_residual = std::max(rep.max_inner_residual, std::abs(inner) / norm_u);
    rep.max_energy_residual =
        std::max(rep.max_energy_residual, std::abs(eu - ev - et) / (std::abs(eu) + norm_u));
    const double lhs = et - cs.lambda1 * norm_t;
    const double rhs = gap * norm_t;
    if (rhs > 0.0)
      rep.max_gap_violation = std::max(rep.max_gap_violation, std::max(0.0, rhs - lhs) / rhs);
  }
  return rep;
}

TestFunctionEnergy testfunction_energy(const StripGeometry& geometry, const CrossSection& cs,
                                       const Potential& V, const Measure& mu, int n,
                                       double resolution) {
  if (n < 1) throw std::invalid_argument("testfunction_energy: n must be >= 1");
  TestFunctionEnergy out;
  // Exact piecewise integration of |w_n'|^2: slope 4 over one quarter-window,
  // zero over the plateau, slope -1 over the trailing window.
  const double q = std::ldexp(1.0, n - 2);
  out.energy = 16.0 * q + 0.0 + 1.0 * (4.0 * q);

  const Rect support{q, 8.0 * q, 0.0, geometry.a};
  const QuadratureRule rule = quadrature(mu, support, resolution);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& p = rule.nodes[i];
    const double u = cs.u1(p.x2);
    const double vw = V(p.x1, p.x2) * u * u * rule.weights[i];
    const double tent = tent_profile(n, p.x1);
    out.potential_term += tent * tent * vw;
    if (DyadicWindow::index_of(p.x1) == n) out.f_n += std::abs(p.x1) * vw;
  }
  out.binds = out.f_n > 5.0;
  return out;
}

}  // namespace strip
