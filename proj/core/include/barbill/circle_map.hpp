#pragma once

// The bar-billiard circle map psi_U: a boundary point v is sent to the first
// counterclockwise boundary point w such that chord vw supports U. For a
// convex polygon the supporting vertex is constant on arcs between
// breakpoints, and on each arc psi_U agrees with the chord map through that
// vertex.

#include <span>
#include <vector>

#include "barbill/klein.hpp"

namespace barbill {

inline constexpr long kMaxIterations = 10'000'000;
/// Angles closer than this to a breakpoint are treated as the breakpoint.
inline constexpr double kBreakpointSnap = 1e-12;

enum class BodyKind { Point, Segment, Polygon };

class ConvexBody {
 public:
  static ConvexBody point(const DiskPoint& p);
  /// Throws Error{InvalidBody} if the endpoints coincide.
  static ConvexBody segment(const DiskPoint& a, const DiskPoint& b);
  /// Vertices in counterclockwise order, strictly convex; else Error{InvalidBody}.
  static ConvexBody polygon(std::vector<DiskPoint> vertices);
  static ConvexBody triangle(const Triangle& t);

  BodyKind kind() const noexcept { return kind_; }
  const std::vector<DiskPoint>& vertices() const noexcept { return vertices_; }

 private:
  ConvexBody(BodyKind kind, std::vector<DiskPoint> vertices)
      : kind_(kind), vertices_(std::move(vertices)) {}

  BodyKind kind_;
  std::vector<DiskPoint> vertices_;
};

/// Arc [u, next breakpoint) is served by vertex `active_vertex`.
struct Breakpoint {
  IdealPoint u;
  int active_vertex;
};

struct OneSidedDerivative {
  double left;
  double right;
};

/// psi_P: the other endpoint of the chord from v through P.
IdealPoint second_intersection(const IdealPoint& v, const DiskPoint& p);
Vec2 second_intersection(Vec2 v, Vec2 p);

/// Derivative of psi_P at v: |P psi_P(v)| / |v P|.
double point_map_derivative(const IdealPoint& v, const DiskPoint& p);

class TangentMap {
 public:
  explicit TangentMap(ConvexBody body);

  const ConvexBody& body() const noexcept { return body_; }
  std::span<const Breakpoint> breakpoints() const noexcept { return breakpoints_; }

  /// Vertex serving the arc containing `turns` (arcs are left-closed).
  int active_vertex(double turns) const;
  /// Vertex serving the arc immediately clockwise of `turns`.
  int active_vertex_before(double turns) const;

  IdealPoint evaluate(const IdealPoint& v) const;
  /// Counterclockwise gap from v to psi(v), in (0, 1).
  double gap(double turns) const;
  OneSidedDerivative derivative(const IdealPoint& v) const;

  /// Lift F on R with F(x + 1) = F(x) + 1 and F(x) - x in (0, 1).
  double lift(double x) const;
  /// F^n(x) - x, accumulated from gaps. Throws IterationBudgetExceeded.
  double lift_displacement(double x, long n) const;

  /// [v, psi(v), ..., psi^n(v)]. Throws IterationBudgetExceeded for n > 1e7.
  std::vector<IdealPoint> orbit(const IdealPoint& v, long n) const;

 private:
  int breakpoint_index(double turns) const;

  ConvexBody body_;
  std::vector<Breakpoint> breakpoints_;
};

TangentMap build_tangent_map(ConvexBody body);

inline IdealPoint evaluate(const TangentMap& map, const IdealPoint& v) { return map.evaluate(v); }
inline OneSidedDerivative derivative(const TangentMap& map, const IdealPoint& v) {
  return map.derivative(v);
}
inline double lift_eval(const TangentMap& map, double x) { return map.lift(x); }
inline std::vector<IdealPoint> orbit(const TangentMap& map, const IdealPoint& v, long n) {
  return map.orbit(v, n);
}

}  // namespace barbill
