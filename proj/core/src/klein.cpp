#include "barbill/klein.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "search.hpp"

namespace barbill {

namespace {

constexpr double kCoincidentTol = 1e-12;
constexpr double kLorentzTol = 1e-10;

// Euclidean distance from p to S^1 travelling along unit direction u.
// Root of s^2 + 2 s (p.u) + |p|^2 - 1 = 0 with s > 0, in cancellation-free form.
double exit_distance(Vec2 p, Vec2 u) {
  const double b = dot(p, u);
  const double c = 1.0 - dot(p, p);  // > 0 inside the disk
  const double root = std::sqrt(b * b + c);
  return b <= 0.0 ? root - b : c / (root + b);
}

struct ChordFrame {
  Vec2 dir;     // unit, from P towards Q
  double len;   // |PQ|
  double back;  // |v1 P|, v1 behind P
  double ahead; // |Q v2|, v2 beyond Q
};

ChordFrame chord_frame(Vec2 p, Vec2 q) {
  const Vec2 d = q - p;
  const double len = norm(d);
  if (!(len > kCoincidentTol)) {
    throw Error(ErrorCode::CoincidentPoints, "points coincide; no line through them");
  }
  const Vec2 u = (1.0 / len) * d;
  return {u, len, exit_distance(p, -1.0 * u), exit_distance(q, u)};
}

// d'(P,Q) = 1/2 log((|v1Q||v2P|) / (|v1P||v2Q|)) written as two log1p terms;
// swapping P and Q swaps the terms, so the value is exactly symmetric.
double distance_from_frame(const ChordFrame& f) {
  return 0.5 * (std::log1p(f.len / f.back) + std::log1p(f.len / f.ahead));
}

double raw_distance(Vec2 p, Vec2 q) {
  if (p == q) return 0.0;
  return distance_from_frame(chord_frame(p, q));
}

using Mat = KleinIsometry::Matrix;

Mat multiply(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

std::array<double, 3> act(const Mat& m, double x, double y, double w) {
  return {m[0][0] * x + m[0][1] * y + m[0][2] * w,
          m[1][0] * x + m[1][1] * y + m[1][2] * w,
          m[2][0] * x + m[2][1] * y + m[2][2] * w};
}

}  // namespace

// ---------------------------------------------------------------------------

double distance_to_line(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  return std::abs(cross(d, p - a)) / norm(d);
}

std::optional<Vec2> line_intersection(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
  const Vec2 da = a2 - a1;
  const Vec2 db = b2 - b1;
  const double den = cross(da, db);
  if (std::abs(den) <= 1e-15 * norm(da) * norm(db)) return std::nullopt;
  const double s = cross(b1 - a1, db) / den;
  return a1 + s * da;
}

double wrap_turns(double a) {
  double r = a - std::floor(a);
  if (r >= 1.0) r = 0.0;  // a = -tiny rounds to 1.0
  return r;
}

double ccw_gap(double from, double to) { return wrap_turns(to - from); }

double angular_distance(double a, double b) {
  const double g = ccw_gap(a, b);
  return std::min(g, 1.0 - g);
}

bool in_open_arc(double a, double from, double to) {
  const double span = ccw_gap(from, to);
  const double pos = ccw_gap(from, a);
  return pos > 0.0 && pos < span;
}

// ---------------------------------------------------------------------------

bool DiskPoint::is_interior(double x, double y) noexcept {
  return std::isfinite(x) && std::isfinite(y) && x * x + y * y < 1.0 - kBoundaryEps;
}

DiskPoint::DiskPoint(double x, double y) : v_{x, y} {
  if (!is_interior(x, y)) {
    throw Error(ErrorCode::OutsideDisk, "point is not strictly inside the unit disk");
  }
}

IdealPoint IdealPoint::from_turns(double turns) {
  const double a = wrap_turns(turns);
  return {a, {std::cos(kTwoPi * a), std::sin(kTwoPi * a)}};
}

IdealPoint IdealPoint::from_vector(Vec2 v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::OutOfRange, "ideal point needs a finite nonzero vector");
  }
  const Vec2 u = (1.0 / n) * v;
  return {wrap_turns(std::atan2(u.y, u.x) / kTwoPi), u};
}

// ---------------------------------------------------------------------------

KleinIsometry::KleinIsometry() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

KleinIsometry KleinIsometry::from_matrix(const Matrix& m) {
  KleinIsometry iso(m);
  if (!(iso.lorentz_defect() <= kLorentzTol) || !(m[2][2] > 0.0)) {
    throw Error(ErrorCode::InvariantViolation, "matrix is not an orthochronous Lorentz transform");
  }
  return iso;
}

KleinIsometry KleinIsometry::rotation(double turns) {
  const double c = std::cos(kTwoPi * turns);
  const double s = std::sin(kTwoPi * turns);
  return KleinIsometry(Matrix{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}});
}

KleinIsometry KleinIsometry::translation_to_origin(Vec2 m) {
  const double r2 = dot(m, m);
  if (!(r2 < 1.0)) {
    throw Error(ErrorCode::OutsideDisk, "translation center must lie inside the disk");
  }
  // Lorentz boost with velocity m; (gamma - 1) / |m|^2 = gamma^2 / (gamma + 1).
  const double g = 1.0 / std::sqrt(1.0 - r2);
  const double k = g * g / (g + 1.0);
  return KleinIsometry(Matrix{{{1.0 + k * m.x * m.x, k * m.x * m.y, -g * m.x},
                               {k * m.x * m.y, 1.0 + k * m.y * m.y, -g * m.y},
                               {-g * m.x, -g * m.y, g}}});
}

KleinIsometry KleinIsometry::then(const KleinIsometry& next) const {
  return KleinIsometry(multiply(next.m_, m_));
}

KleinIsometry KleinIsometry::inverse() const {
  // m^{-1} = J m^T J.
  Matrix r{};
  constexpr double j[3] = {1, 1, -1};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i][k] = j[i] * m_[k][i] * j[k];
  return KleinIsometry(r);
}

DiskPoint KleinIsometry::apply(const DiskPoint& p) const {
  const auto h = act(m_, p.x(), p.y(), 1.0);
  return DiskPoint(h[0] / h[2], h[1] / h[2]);
}

IdealPoint KleinIsometry::apply(const IdealPoint& p) const {
  const Vec2 u = p.vec();
  const auto h = act(m_, u.x, u.y, 1.0);
  return IdealPoint::from_vector({h[0] / h[2], h[1] / h[2]});
}

double KleinIsometry::lorentz_defect() const {
  constexpr double j[3] = {1, 1, -1};
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m_[k][a] * j[k] * m_[k][b];
      const double target = a == b ? j[a] : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  return worst;
}

// ---------------------------------------------------------------------------

Triangle::Triangle(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r)
    : v_{p, q, r}, input_{0, 1, 2} {
  const double area2 = cross(q.vec() - p.vec(), r.vec() - p.vec());
  if (!(std::abs(area2) > 1e-12)) {
    throw Error(ErrorCode::DegenerateBody, "triangle vertices are collinear");
  }
  if (area2 < 0.0) {
    std::swap(v_[1], v_[2]);
    std::swap(input_[1], input_[2]);
  }
}

int Triangle::stored_index(int k) const {
  for (int i = 0; i < 3; ++i)
    if (input_[static_cast<std::size_t>(i)] == k) return i;
  throw Error(ErrorCode::OutOfRange, "vertex argument position must be 0, 1 or 2");
}

// ---------------------------------------------------------------------------

Chord chord_through(const DiskPoint& p, const DiskPoint& q) {
  const ChordFrame f = chord_frame(p.vec(), q.vec());
  const Vec2 a = p.vec() - f.back * f.dir;
  const Vec2 b = q.vec() + f.ahead * f.dir;
  return {IdealPoint::from_vector(a), IdealPoint::from_vector(b)};
}

double hyp_distance(const DiskPoint& p, const DiskPoint& q) { return raw_distance(p.vec(), q.vec()); }

double delta_n(double d, int n) {
  if (!(d > 0.0)) throw Error(ErrorCode::NonpositiveDistance, "threshold needs a positive distance");
  if (n < 1) throw Error(ErrorCode::OutOfRange, "threshold index must be positive");
  // log((e^x + 1)/(e^x - 1)) = log1p(2 / expm1(x))
  return std::log1p(2.0 / std::expm1(static_cast<double>(n) * d));
}

FootResult foot_and_delta(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r) {
  const ChordFrame f = chord_frame(p.vec(), q.vec());
  const Vec2 a = p.vec() - f.back * f.dir;  // ideal endpoint behind P
  const Vec2 b = q.vec() + f.ahead * f.dir;
  const double total = f.back + f.len + f.ahead;

  // Hyperbolic arclength coordinate along the chord: s = 1 / (1 + e^{-2 lambda})
  // is the Euclidean fraction from a to b.
  auto at = [&](double lambda) -> Vec2 {
    if (lambda <= 0.0) {
      const double s = 1.0 / (1.0 + std::exp(-2.0 * lambda));
      return a + (s * total) * f.dir;
    }
    const double one_minus_s = 1.0 / (1.0 + std::exp(2.0 * lambda));
    return b - (one_minus_s * total) * f.dir;
  };
  auto dist_to = [&](double lambda) {
    const Vec2 s = at(lambda);
    if (!(dot(s, s) < 1.0)) return std::numeric_limits<double>::infinity();
    return raw_distance(r.vec(), s);
  };

  const double lambda_p = 0.5 * std::log(f.back / (f.len + f.ahead));
  const double reach = 2.0 * hyp_distance(r, p) + 1.0;
  const auto [lambda, delta] = detail::golden_min(dist_to, lambda_p - reach, lambda_p + reach, 1e-12);
  return {DiskPoint(at(lambda)), delta};
}

double delta_from_sides(double alpha, double beta, double gamma) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0)) {
    throw Error(ErrorCode::InfeasibleSides, "side lengths must be positive");
  }
  // sinh(delta) sinh(gamma) = sqrt((cosh b - cosh(a-g)) (cosh(a+g) - cosh b)),
  // each factor rewritten as a product of sinh terms to avoid cancellation.
  const double f1 = 2.0 * std::sinh(0.5 * (beta + alpha - gamma)) * std::sinh(0.5 * (beta - alpha + gamma));
  const double f2 = 2.0 * std::sinh(0.5 * (alpha + gamma + beta)) * std::sinh(0.5 * (alpha + gamma - beta));
  double radicand = f1 * f2;
  if (radicand < 0.0) {
    if (radicand < -1e-12) {
      throw Error(ErrorCode::InfeasibleSides, "sides violate the hyperbolic triangle inequality");
    }
    radicand = 0.0;
  }
  return std::asinh(std::sqrt(radicand) / std::sinh(gamma));
}

double equidistant_x(double k, double y) {
  if (!(k > 0.0)) throw Error(ErrorCode::NonpositiveDistance, "equidistance must be positive");
  if (!(std::abs(y) < 1.0)) throw Error(ErrorCode::OutOfRange, "height must satisfy |y| < 1");
  return std::sqrt((1.0 - y) * (1.0 + y)) * std::tanh(k);
}

PairNormalization normalize_pair(const DiskPoint& p, const DiskPoint& q) {
  if (!(distance(p.vec(), q.vec()) > kCoincidentTol)) {
    throw Error(ErrorCode::CoincidentPoints, "cannot normalize a pair of coincident points");
  }
  const double d = hyp_distance(p, q);

  // Hyperbolic midpoint: normalized sum of the hyperboloid lifts.
  auto lift_w = [](const DiskPoint& x) { return 1.0 / std::sqrt(1.0 - dot(x.vec(), x.vec())); };
  const double wp = lift_w(p);
  const double wq = lift_w(q);
  const Vec2 mid = (1.0 / (wp + wq)) * (wp * p.vec() + wq * q.vec());

  const KleinIsometry center = KleinIsometry::translation_to_origin(mid);
  const Vec2 pc = center.apply(p).vec();
  const double turn = 0.25 - std::atan2(pc.y, pc.x) / kTwoPi;
  const KleinIsometry iso = center.then(KleinIsometry::rotation(turn));
  return {iso, std::tanh(0.5 * d)};
}

}  // namespace barbill
