#pragma once

// Hyperbolic geometry in the Beltrami-Klein model: the open unit disk with
// geodesics realized as straight chords. Ideal points (points of S^1) carry
// their angle in turns, so the circle is R/Z with period 1.

#include <array>
#include <cmath>
#include <optional>

#include "barbill/error.hpp"

namespace barbill {

/// Interior points must satisfy x^2 + y^2 < 1 - kBoundaryEps.
inline constexpr double kBoundaryEps = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Euclidean distance from `p` to the infinite line through `a` and `b`.
double distance_to_line(Vec2 p, Vec2 a, Vec2 b);

/// Intersection of line a1a2 with line b1b2; nullopt when (nearly) parallel.
std::optional<Vec2> line_intersection(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2);

// ---------------------------------------------------------------------------
// Angles on R/Z.

/// Reduce to [0, 1).
double wrap_turns(double a);
/// Counterclockwise gap from `from` to `to`, in [0, 1).
double ccw_gap(double from, double to);
/// Shortest cyclic distance between two angles, in [0, 0.5].
double angular_distance(double a, double b);
/// True when `a` lies in the open counterclockwise arc (from, to).
bool in_open_arc(double a, double from, double to);

// ---------------------------------------------------------------------------

class DiskPoint {
 public:
  /// Throws Error{OutsideDisk} unless finite and x^2 + y^2 < 1 - kBoundaryEps.
  DiskPoint(double x, double y);
  explicit DiskPoint(Vec2 v) : DiskPoint(v.x, v.y) {}

  static bool is_interior(double x, double y) noexcept;

  double x() const noexcept { return v_.x; }
  double y() const noexcept { return v_.y; }
  Vec2 vec() const noexcept { return v_; }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  Vec2 v_;
};

class IdealPoint {
 public:
  /// Any real angle; reduced mod 1.
  static IdealPoint from_turns(double turns);
  /// Any nonzero vector; normalized onto S^1.
  static IdealPoint from_vector(Vec2 v);

  double turns() const noexcept { return turns_; }
  Vec2 vec() const noexcept { return unit_; }

 private:
  IdealPoint(double turns, Vec2 unit) : turns_(turns), unit_(unit) {}

  double turns_;
  Vec2 unit_;
};

/// A hyperbolic line, given by its two ideal endpoints (ordered).
struct Chord {
  IdealPoint a;
  IdealPoint b;
};

/// Disk isometry acting projectively on (x, y, 1). The matrix is
/// Lorentz-orthogonal: m^T J m = J with J = diag(1, 1, -1).
class KleinIsometry {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  KleinIsometry();  // identity

  /// Validates the Lorentz condition to 1e-10 entrywise and m[2][2] > 0.
  static KleinIsometry from_matrix(const Matrix& m);
  static KleinIsometry rotation(double turns);
  /// The hyperbolic translation carrying `center` to the origin.
  static KleinIsometry translation_to_origin(Vec2 center);

  const Matrix& matrix() const noexcept { return m_; }

  KleinIsometry then(const KleinIsometry& next) const;  // next ∘ this
  KleinIsometry inverse() const;

  DiskPoint apply(const DiskPoint& p) const;
  IdealPoint apply(const IdealPoint& p) const;

  /// Max entrywise deviation of m^T J m from J.
  double lorentz_defect() const;

 private:
  explicit KleinIsometry(const Matrix& m) : m_(m) {}

  Matrix m_;
};

/// A non-degenerate triangle, stored counterclockwise.
class Triangle {
 public:
  /// Throws Error{DegenerateBody} when twice the signed area is <= 1e-12.
  Triangle(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r);

  const std::array<DiskPoint, 3>& vertices() const noexcept { return v_; }
  const DiskPoint& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  /// Argument position (0, 1, 2 for p, q, r) of stored vertex i.
  int input_index(int i) const { return input_[static_cast<std::size_t>(i)]; }
  /// Stored index of the vertex passed at argument position k.
  int stored_index(int k) const;

 private:
  std::array<DiskPoint, 3> v_;
  std::array<int, 3> input_;
};

// ---------------------------------------------------------------------------
// Operations.

/// Ideal endpoints of line PQ; `a` is the endpoint on P's side.
Chord chord_through(const DiskPoint& p, const DiskPoint& q);

/// Hilbert (cross-ratio) distance d'(P, Q). Exactly symmetric.
double hyp_distance(const DiskPoint& p, const DiskPoint& q);

/// Threshold log((e^{nd} + 1) / (e^{nd} - 1)).
double delta_n(double d, int n);

struct FootResult {
  DiskPoint foot;
  double delta;
};

/// Foot of the hyperbolic perpendicular from R to line PQ and its length.
FootResult foot_and_delta(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r);

/// Altitude onto side gamma of a hyperbolic triangle with sides
/// alpha = d'(Q,R), beta = d'(R,P), gamma = d'(P,Q).
double delta_from_sides(double alpha, double beta, double gamma);

/// Nonnegative x of the locus at hyperbolic distance k from the vertical
/// diameter, at height y.
double equidistant_x(double k, double y);

struct PairNormalization {
  KleinIsometry iso;  // iso(P) = (0, t), iso(Q) = (0, -t)
  double t;
};

PairNormalization normalize_pair(const DiskPoint& p, const DiskPoint& q);

inline DiskPoint apply(const KleinIsometry& iso, const DiskPoint& p) { return iso.apply(p); }
inline IdealPoint apply(const KleinIsometry& iso, const IdealPoint& p) { return iso.apply(p); }

}  // namespace barbill
