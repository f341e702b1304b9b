#pragma once

// Reference computations that share no code path with the library: they work
// from textbook formulas (acosh distance, pole-polar perpendiculars, brute
// force over vertices and grids) so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <utility>
#include <random>
#include <vector>

#include <barbill/pentagram.hpp>

namespace oracle {

using barbill::Vec2;

inline constexpr double kTwoPi = 6.283185307179586;

inline double turns_of(Vec2 v) {
  double a = std::atan2(v.y, v.x) / kTwoPi;
  if (a < 0) a += 1.0;
  return a >= 1.0 ? 0.0 : a;
}

inline Vec2 on_circle(double turns) { return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)}; }

inline double ccw(double from, double to) {
  double g = std::fmod(to - from, 1.0);
  if (g < 0) g += 1.0;
  return g;
}

/// Other endpoint of the chord from unit vector v through p, by solving the
/// quadratic |v + s (p - v)|^2 = 1 with the quadratic formula.
inline Vec2 chord_end(Vec2 v, Vec2 p) {
  const Vec2 d{p.x - v.x, p.y - v.y};
  const double a = d.x * d.x + d.y * d.y;
  const double b = 2.0 * (v.x * d.x + v.y * d.y);
  const double c = v.x * v.x + v.y * v.y - 1.0;
  const double disc = std::sqrt(std::max(0.0, b * b - 4 * a * c));
  const double s1 = (-b + disc) / (2 * a), s2 = (-b - disc) / (2 * a);
  const double s = std::abs(s1) > std::abs(s2) ? s1 : s2;
  return {v.x + s * d.x, v.y + s * d.y};
}

/// Bar-billiard image: among the vertex chord maps, the smallest positive
/// counterclockwise gap wins.
inline double psi_turns(const std::vector<Vec2>& verts, double v) {
  const Vec2 u = on_circle(v);
  double best = 2.0;
  for (const auto& p : verts) {
    const double g = ccw(v, turns_of(chord_end(u, p)));
    if (g > 1e-15 && g < best) best = g;
  }
  return v + best;
}

/// cosh d = (1 - p.q) / sqrt((1 - |p|^2)(1 - |q|^2)).
inline double acosh_distance(Vec2 p, Vec2 q) {
  const double num = 1.0 - (p.x * q.x + p.y * q.y);
  const double den = std::sqrt((1.0 - (p.x * p.x + p.y * p.y)) * (1.0 - (q.x * q.x + q.y * q.y)));
  return std::acosh(std::max(1.0, num / den));
}

inline Vec2 intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
  const double d1x = a2.x - a1.x, d1y = a2.y - a1.y, d2x = b2.x - b1.x, d2y = b2.y - b1.y;
  const double den = d1x * d2y - d1y * d2x;
  const double s = ((b1.x - a1.x) * d2y - (b1.y - a1.y) * d2x) / den;
  return {a1.x + s * d1x, a1.y + s * d1y};
}

/// Perpendicular from r to line pq in the Klein model: the line through r and
/// the pole of pq (Euclidean normal when pq is a diameter).
struct Foot {
  Vec2 foot;
  double delta;
};

inline Foot pole_foot(Vec2 p, Vec2 q, Vec2 r) {
  // Line pq as n.x = c with |n| = 1; its pole is n / c.
  Vec2 n{-(q.y - p.y), q.x - p.x};
  const double len = std::hypot(n.x, n.y);
  n = {n.x / len, n.y / len};
  const double c = n.x * p.x + n.y * p.y;
  Vec2 other;
  if (std::abs(c) < 1e-14) {
    other = {r.x + n.x, r.y + n.y};
  } else {
    other = {n.x / c, n.y / c};
  }
  const Vec2 f = intersect(p, q, r, other);
  return {f, acosh_distance(f, r)};
}

/// Ideal endpoints of the Euclidean line through a and b.
inline std::pair<Vec2, Vec2> line_ends(Vec2 a, Vec2 b) {
  const Vec2 d{b.x - a.x, b.y - a.y};
  const double qa = d.x * d.x + d.y * d.y;
  const double qb = 2.0 * (a.x * d.x + a.y * d.y);
  const double qc = a.x * a.x + a.y * a.y - 1.0;
  const double disc = std::sqrt(qb * qb - 4 * qa * qc);
  const double s1 = (-qb - disc) / (2 * qa), s2 = (-qb + disc) / (2 * qa);
  return {{a.x + s1 * d.x, a.y + s1 * d.y}, {a.x + s2 * d.x, a.y + s2 * d.y}};
}

/// Signed distance from p to the chord w -> psi^{2n}(w) of the segment map.
inline double tau_side(Vec2 p1, Vec2 p2, Vec2 p, int n, double w) {
  const std::vector<Vec2> seg{p1, p2};
  double x = w;
  for (int k = 0; k < 2 * n; ++k) x = psi_turns(seg, std::fmod(x, 1.0));
  const Vec2 a = on_circle(w), b = on_circle(x);
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  return ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / len;
}

/// Root count from a dense scan: sign changes and near-zero local minima of
/// |side| are events; consecutive events with |side| <= band at every sample
/// in between are one (double) root.
inline int tau_clusters(Vec2 p1, Vec2 p2, Vec2 p, int n, int samples, double band = 1e-6) {
  const auto [ea, eb] = line_ends(p1, p2);
  const double a0 = turns_of(ea), b0 = turns_of(eb);
  int clusters = 0;
  for (const auto& [from, to] : {std::pair{a0, b0}, std::pair{b0, a0}}) {
    const double len = ccw(from, to);
    std::vector<double> xs, fs;
    for (int k = 1; k < samples; ++k) xs.push_back(from + len * k / samples);
    // Geometric refinement toward both ends, where far points put a root.
    for (double off = 1e-11; off < len / samples; off *= 1.01) {
      xs.push_back(from + off);
      xs.push_back(from + len - off);
    }
    std::sort(xs.begin(), xs.end());
    for (double x : xs) fs.push_back(tau_side(p1, p2, p, n, x));
    bool open = false;  // inside a cluster, nothing above the band seen since
    for (std::size_t k = 0; k + 1 < fs.size(); ++k) {
      const bool event = (fs[k] < 0) != (fs[k + 1] < 0) ||
                         (k > 0 && std::abs(fs[k]) <= band && std::abs(fs[k]) <= std::abs(fs[k - 1]) &&
                          std::abs(fs[k]) <= std::abs(fs[k + 1]));
      if (event && !open) ++clusters;
      if (event) open = true;
      if (std::abs(fs[k + 1]) > band) open = false;
    }
  }
  return clusters;
}

/// Random isometry: rotation, then a translation moving the origin by a
/// bounded amount, then another rotation.
inline barbill::KleinIsometry random_isometry(std::mt19937_64& rng, double max_shift) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double ang = kTwoPi * U(rng);
  const double rad = max_shift * U(rng);
  const auto shift = barbill::KleinIsometry::translation_to_origin({rad * std::cos(ang), rad * std::sin(ang)});
  return barbill::KleinIsometry::rotation(U(rng)).then(shift).then(barbill::KleinIsometry::rotation(U(rng)));
}

}  // namespace oracle
