#include "strip/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace strip {

namespace {

Rect intersect(const Rect& a, const Rect& b) {
  return Rect{std::max(a.x1_lo, b.x1_lo), std::min(a.x1_hi, b.x1_hi),
              std::max(a.x2_lo, b.x2_lo), std::min(a.x2_hi, b.x2_hi)};
}

bool empty_rect(const Rect& r) { return r.x1_lo > r.x1_hi || r.x2_lo > r.x2_hi; }

double segment_length(const Point& p0, const Point& p1) {
  return std::hypot(p1.x1 - p0.x1, p1.x2 - p0.x2);
}

// Parameter interval [t0, t1] of {p0 + t (p1 - p0), t in [0,1]} inside rect,
// empty marked by t0 > t1. Valid for axis-aligned rects and straight segments.
std::pair<double, double> clip_segment(const Point& p0, const Point& p1, const Rect& r) {
  double t0 = 0.0, t1 = 1.0;
  auto clip_axis = [&](double x0, double dx, double lo, double hi) {
    if (dx == 0.0) {
      if (x0 < lo || x0 > hi) { t0 = 1.0; t1 = 0.0; }
      return;
    }
    double ta = (lo - x0) / dx, tb = (hi - x0) / dx;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  };
  clip_axis(p0.x1, p1.x1 - p0.x1, r.x1_lo, r.x1_hi);
  clip_axis(p0.x2, p1.x2 - p0.x2, r.x2_lo, r.x2_hi);
  return {t0, t1};
}

QuadratureRule quad_lebesgue(const LebesgueDensity& c, const Rect& region, double resolution) {
  QuadratureRule rule;
  const Rect box = intersect(c.box, region);
  if (empty_rect(box)) return rule;
  const double w1 = box.x1_hi - box.x1_lo, w2 = box.x2_hi - box.x2_lo;
  if (w1 <= 0.0 || w2 <= 0.0) return rule;
  const int n1 = std::max(1, static_cast<int>(std::ceil(w1 / resolution)));
  const int n2 = std::max(1, static_cast<int>(std::ceil(w2 / resolution)));
  const double h1 = w1 / n1, h2 = w2 / n2;
  rule.nodes.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i) {
    const double x1 = box.x1_lo + (i + 0.5) * h1;
    for (int j = 0; j < n2; ++j) {
      const double x2 = box.x2_lo + (j + 0.5) * h2;
      rule.nodes.push_back({x1, x2});
      rule.weights.push_back(c.density(x1, x2) * h1 * h2);
    }
  }
  return rule;
}

QuadratureRule quad_segment(const LineSegment& c, const Rect& region, double resolution) {
  QuadratureRule rule;
  auto [t0, t1] = clip_segment(c.p0, c.p1, region);
  if (t0 >= t1) return rule;
  const double len = segment_length(c.p0, c.p1);
  if (len == 0.0) return rule;
  const double s0 = t0 * len, s1 = t1 * len;
  const int n = std::max(1, static_cast<int>(std::ceil((s1 - s0) / resolution)));
  const double ds = (s1 - s0) / n;
  for (int i = 0; i < n; ++i) {
    const double s = s0 + (i + 0.5) * ds;
    const double t = s / len;
    rule.nodes.push_back({c.p0.x1 + t * (c.p1.x1 - c.p0.x1), c.p0.x2 + t * (c.p1.x2 - c.p0.x2)});
    rule.weights.push_back(c.linear_density(s) * ds);
  }
  return rule;
}

// Midpoints (in [0,1]) of the 2^depth level-`depth` intervals of the
// middle-thirds Cantor construction.
void cantor_midpoints(int depth, double lo, double hi, std::vector<double>& out) {
  if (depth == 0) {
    out.push_back(0.5 * (lo + hi));
    return;
  }
  const double third = (hi - lo) / 3.0;
  cantor_midpoints(depth - 1, lo, lo + third, out);
  cantor_midpoints(depth - 1, hi - third, hi, out);
}

QuadratureRule quad_cantor(const CantorSegment& c, const Rect& region, double /*resolution*/) {
  QuadratureRule rule;
  std::vector<double> ts;
  ts.reserve(std::size_t(1) << c.depth);
  cantor_midpoints(c.depth, 0.0, 1.0, ts);
  const double mass = c.total_mass / static_cast<double>(ts.size());
  for (double t : ts) {
    const Point p{c.p0.x1 + t * (c.p1.x1 - c.p0.x1), c.p0.x2 + t * (c.p1.x2 - c.p0.x2)};
    if (region.contains(p)) {
      rule.nodes.push_back(p);
      rule.weights.push_back(mass);
    }
  }
  return rule;
}

double ball_mass_lebesgue(const LebesgueDensity& c, const Point& center, double r) {
  // Midpoint grid anchored at the ball center, so the result is invariant
  // under joint translation of measure and center.
  const int n = 600;
  const double h = 2.0 * r / n;
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x1 = center.x1 - r + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double x2 = center.x2 - r + (j + 0.5) * h;
      const double dx = x1 - center.x1, dy = x2 - center.x2;
      if (dx * dx + dy * dy > r * r) continue;
      if (x1 < c.box.x1_lo || x1 > c.box.x1_hi || x2 < c.box.x2_lo || x2 > c.box.x2_hi) continue;
      mass += c.density(x1, x2);
    }
  }
  return mass * h * h;
}

double ball_mass_segment(const LineSegment& c, const Point& center, double r) {
  const double dx = c.p1.x1 - c.p0.x1, dy = c.p1.x2 - c.p0.x2;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return 0.0;
  const double ex = c.p0.x1 - center.x1, ey = c.p0.x2 - center.x2;
  // |e + t d|^2 = r^2
  const double b = (ex * dx + ey * dy) / len2;
  const double cc = (ex * ex + ey * ey - r * r) / len2;
  const double disc = b * b - cc;
  if (disc <= 0.0) return 0.0;
  const double t0 = std::max(0.0, -b - std::sqrt(disc));
  const double t1 = std::min(1.0, -b + std::sqrt(disc));
  if (t0 >= t1) return 0.0;
  const double len = std::sqrt(len2);
  const int n = 512;
  const double ds = (t1 - t0) * len / n;
  double mass = 0.0;
  for (int i = 0; i < n; ++i) mass += c.linear_density((t0 * len) + (i + 0.5) * ds);
  return mass * ds;
}

double ball_mass_cantor(const CantorSegment& c, const Point& center, double r) {
  std::vector<double> ts;
  cantor_midpoints(c.depth, 0.0, 1.0, ts);
  const double mass = c.total_mass / static_cast<double>(ts.size());
  double total = 0.0;
  for (double t : ts) {
    const double x1 = c.p0.x1 + t * (c.p1.x1 - c.p0.x1);
    const double x2 = c.p0.x2 + t * (c.p1.x2 - c.p0.x2);
    const double dx = x1 - center.x1, dy = x2 - center.x2;
    if (dx * dx + dy * dy <= r * r) total += mass;
  }
  return total;
}

Rect component_bbox(const MeasureComponent& comp) {
  if (const auto* l = std::get_if<LebesgueDensity>(&comp)) return l->box;
  if (const auto* s = std::get_if<LineSegment>(&comp)) {
    return Rect{std::min(s->p0.x1, s->p1.x1), std::max(s->p0.x1, s->p1.x1),
                std::min(s->p0.x2, s->p1.x2), std::max(s->p0.x2, s->p1.x2)};
  }
  const auto& c = std::get<CantorSegment>(comp);
  return Rect{std::min(c.p0.x1, c.p1.x1), std::max(c.p0.x1, c.p1.x1),
              std::min(c.p0.x2, c.p1.x2), std::max(c.p0.x2, c.p1.x2)};
}

}  // namespace

double QuadratureRule::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void QuadratureRule::append(const QuadratureRule& other, double scale) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.reserve(weights.size() + other.weights.size());
  for (double w : other.weights) weights.push_back(w * scale);
}

void Measure::validate(const StripGeometry& geometry) const {
  if (components.empty()) throw std::invalid_argument("measure must have at least one component");
  auto in_strip = [&](const Point& p) { return p.x2 >= 0.0 && p.x2 <= geometry.a; };
  for (const auto& [w, comp] : components) {
    if (!(w > 0.0)) throw std::invalid_argument("measure component weights must be positive");
    const Rect bb = component_bbox(comp);
    if (!in_strip({bb.x1_lo, bb.x2_lo}) || !in_strip({bb.x1_hi, bb.x2_hi}))
      throw std::invalid_argument("measure component strays outside the closed strip");
    if (const auto* c = std::get_if<CantorSegment>(&comp)) {
      if (c->depth < 1) throw std::invalid_argument("Cantor component depth must be >= 1");
      if (!(c->total_mass > 0.0)) throw std::invalid_argument("Cantor total_mass must be positive");
    }
  }
}

Rect Measure::bounding_box() const {
  Rect bb{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& [w, comp] : components) {
    const Rect b = component_bbox(comp);
    bb.x1_lo = std::min(bb.x1_lo, b.x1_lo);
    bb.x1_hi = std::max(bb.x1_hi, b.x1_hi);
    bb.x2_lo = std::min(bb.x2_lo, b.x2_lo);
    bb.x2_hi = std::max(bb.x2_hi, b.x2_hi);
  }
  return bb;
}

QuadratureRule quadrature(const Measure& measure, const Rect& region, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("quadrature resolution must be positive");
  QuadratureRule rule;
  for (const auto& [w, comp] : measure.components) {
    QuadratureRule part;
    if (const auto* l = std::get_if<LebesgueDensity>(&comp)) part = quad_lebesgue(*l, region, resolution);
    else if (const auto* s = std::get_if<LineSegment>(&comp)) part = quad_segment(*s, region, resolution);
    else part = quad_cantor(std::get<CantorSegment>(comp), region, resolution);
    rule.append(part, w);
  }
  return rule;
}

double measure_of_ball(const Measure& measure, const Point& center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("measure_of_ball: r must be positive");
  double mass = 0.0;
  for (const auto& [w, comp] : measure.components) {
    if (const auto* l = std::get_if<LebesgueDensity>(&comp)) mass += w * ball_mass_lebesgue(*l, center, r);
    else if (const auto* s = std::get_if<LineSegment>(&comp)) mass += w * ball_mass_segment(*s, center, r);
    else mass += w * ball_mass_cantor(std::get<CantorSegment>(comp), center, r);
  }
  return mass;
}

AhlforsEstimate ahlfors_fit(const Measure& measure, int sample_count, double r_min, double r_max,
                            std::uint64_t seed) {
  if (!(r_min > 0.0) || !(r_min < r_max)) throw std::invalid_argument("ahlfors_fit: need 0 < r_min < r_max");
  if (sample_count < 10) throw std::invalid_argument("ahlfors_fit: sample_count must be >= 10");

  const Rect bb = measure.bounding_box();
  const double diam = std::max(bb.x1_hi - bb.x1_lo, bb.x2_hi - bb.x2_lo);
  const double resolution = std::max(diam / 256.0, 1e-6);
  QuadratureRule support = quadrature(measure, bb, resolution);
  std::vector<Point> centers;
  for (std::size_t i = 0; i < support.nodes.size(); ++i)
    if (support.weights[i] > 0.0) centers.push_back(support.nodes[i]);
  if (centers.empty()) throw std::runtime_error("ahlfors_fit: measure support is empty");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
  std::uniform_real_distribution<double> logr(std::log(r_min), std::log(r_max));

  std::vector<double> lr, lm, rs, ms;
  for (int i = 0; i < sample_count; ++i) {
    const Point c = centers[pick(rng)];
    const double r = std::exp(logr(rng));
    const double m = measure_of_ball(measure, c, r);
    if (m <= 0.0) continue;
    lr.push_back(std::log(r));
    lm.push_back(std::log(m));
    rs.push_back(r);
    ms.push_back(m);
  }
  if (lr.size() < 2) throw std::runtime_error("ahlfors_fit: too few nonzero ball masses");

  const double n = static_cast<double>(lr.size());
  const double sx = std::accumulate(lr.begin(), lr.end(), 0.0);
  const double sy = std::accumulate(lm.begin(), lm.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sxx += lr[i] * lr[i];
    sxy += lr[i] * lm[i];
  }
  AhlforsEstimate est;
  est.d_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  est.r_min = r_min;
  est.r_max = r_max;
  est.samples_used = lr.size();
  est.c0_hat = std::numeric_limits<double>::infinity();
  est.c1_hat = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double ratio = ms[i] / std::pow(rs[i], est.d_hat);
    est.c0_hat = std::min(est.c0_hat, ratio);
    est.c1_hat = std::max(est.c1_hat, ratio);
  }

  // Cell comparability: masses of closed unit cells [n, n+1] x (strip width),
  // ratios over adjacent cells that both meet the support.
  const int n_lo = static_cast<int>(std::floor(bb.x1_lo));
  const int n_hi = static_cast<int>(std::ceil(bb.x1_hi));
  std::vector<double> cell_mass;
  for (int k = n_lo; k < n_hi; ++k) {
    const Rect cell{static_cast<double>(k), static_cast<double>(k + 1), bb.x2_lo, bb.x2_hi};
    cell_mass.push_back(quadrature(measure, cell, resolution).total_weight());
  }
  est.c2_hat = std::numeric_limits<double>::infinity();
  est.c3_hat = 0.0;
  for (std::size_t k = 0; k + 1 < cell_mass.size(); ++k) {
    if (cell_mass[k] <= 0.0 || cell_mass[k + 1] <= 0.0) continue;
    const double r1 = cell_mass[k] / cell_mass[k + 1];
    const double r2 = cell_mass[k + 1] / cell_mass[k];
    est.c2_hat = std::min({est.c2_hat, r1, r2});
    est.c3_hat = std::max({est.c3_hat, r1, r2});
  }
  if (!(est.c3_hat > 0.0)) {  // single occupied cell
    est.c2_hat = 1.0;
    est.c3_hat = 1.0;
  }
  return est;
}

}  // namespace strip
