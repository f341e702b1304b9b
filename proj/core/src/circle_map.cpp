#include "barbill/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace barbill {

ConvexBody ConvexBody::point(const DiskPoint& p) { return {BodyKind::Point, {p}}; }

ConvexBody ConvexBody::segment(const DiskPoint& a, const DiskPoint& b) {
  if (!(distance(a.vec(), b.vec()) > 1e-12)) {
    throw Error(ErrorCode::InvalidBody, "segment endpoints coincide");
  }
  return {BodyKind::Segment, {a, b}};
}

ConvexBody ConvexBody::polygon(std::vector<DiskPoint> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(ErrorCode::InvalidBody, "a polygon needs at least three vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i].vec();
    const Vec2 b = vertices[(i + 1) % n].vec();
    const Vec2 c = vertices[(i + 2) % n].vec();
    if (!(cross(b - a, c - b) > 1e-12)) {
      throw Error(ErrorCode::InvalidBody,
                  "polygon is not strictly convex and counterclockwise at vertex " + std::to_string((i + 1) % n));
    }
  }
  // Locally convex turns can still wind more than once.
  double winding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = vertices[(i + 1) % n].vec() - vertices[i].vec();
    const Vec2 e1 = vertices[(i + 2) % n].vec() - vertices[(i + 1) % n].vec();
    winding += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  if (std::abs(winding - kTwoPi) > 1e-6) {
    throw Error(ErrorCode::InvalidBody, "polygon boundary winds more than once");
  }
  return {BodyKind::Polygon, std::move(vertices)};
}

ConvexBody ConvexBody::triangle(const Triangle& t) {
  const auto& v = t.vertices();
  return polygon({v[0], v[1], v[2]});
}

// ---------------------------------------------------------------------------

Vec2 second_intersection(Vec2 v, Vec2 p) {
  // v + s d lies on S^1 for s = 0 and s = -2 (v.d) / |d|^2.
  const Vec2 d = p - v;
  const double s = -2.0 * dot(v, d) / dot(d, d);
  return v + s * d;
}

IdealPoint second_intersection(const IdealPoint& v, const DiskPoint& p) {
  return IdealPoint::from_vector(second_intersection(v.vec(), p.vec()));
}

double point_map_derivative(const IdealPoint& v, const DiskPoint& p) {
  const Vec2 w = second_intersection(v.vec(), p.vec());
  return distance(p.vec(), w) / distance(v.vec(), p.vec());
}

// ---------------------------------------------------------------------------

TangentMap::TangentMap(ConvexBody body) : body_(std::move(body)) {
  const auto& v = body_.vertices();
  const int n = static_cast<int>(v.size());
  if (body_.kind() != BodyKind::Point) {
    // Edge A_i A_{i+1}: u_i is the endpoint of its line nearer A_i; the arc
    // starting at u_i is served by A_{i+1}. A segment is a 2-gon.
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const Chord c = chord_through(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
      breakpoints_.push_back({c.a, j});
    }
    std::sort(breakpoints_.begin(), breakpoints_.end(),
              [](const Breakpoint& a, const Breakpoint& b) { return a.u.turns() < b.u.turns(); });
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      const double next = breakpoints_[(i + 1) % breakpoints_.size()].u.turns();
      if (!(ccw_gap(breakpoints_[i].u.turns(), next) > kBreakpointSnap)) {
        throw Error(ErrorCode::InvalidBody, "breakpoints are not distinct");
      }
    }
  }
}

TangentMap build_tangent_map(ConvexBody body) { return TangentMap(std::move(body)); }

int TangentMap::breakpoint_index(double a) const {
  const int n = static_cast<int>(breakpoints_.size());
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a,
                             [](double x, const Breakpoint& b) { return x < b.u.turns(); });
  int idx = static_cast<int>(it - breakpoints_.begin()) - 1;
  if (idx < 0) idx = n - 1;
  const int next = (idx + 1) % n;
  if (ccw_gap(a, breakpoints_[static_cast<std::size_t>(next)].u.turns()) <= kBreakpointSnap) idx = next;
  return idx;
}

int TangentMap::active_vertex(double turns) const {
  if (breakpoints_.empty()) return 0;
  return breakpoints_[static_cast<std::size_t>(breakpoint_index(wrap_turns(turns)))].active_vertex;
}

int TangentMap::active_vertex_before(double turns) const {
  if (breakpoints_.empty()) return 0;
  const double a = wrap_turns(turns);
  const int n = static_cast<int>(breakpoints_.size());
  int idx = breakpoint_index(a);
  if (angular_distance(a, breakpoints_[static_cast<std::size_t>(idx)].u.turns()) <= kBreakpointSnap) {
    idx = (idx + n - 1) % n;
  }
  return breakpoints_[static_cast<std::size_t>(idx)].active_vertex;
}

IdealPoint TangentMap::evaluate(const IdealPoint& v) const {
  const auto& vertex = body_.vertices()[static_cast<std::size_t>(active_vertex(v.turns()))];
  return second_intersection(v, vertex);
}

double TangentMap::gap(double turns) const {
  const double a = wrap_turns(turns);
  const IdealPoint w = evaluate(IdealPoint::from_turns(a));
  return ccw_gap(a, w.turns());
}

OneSidedDerivative TangentMap::derivative(const IdealPoint& v) const {
  const auto& verts = body_.vertices();
  const auto& right = verts[static_cast<std::size_t>(active_vertex(v.turns()))];
  const auto& left = verts[static_cast<std::size_t>(active_vertex_before(v.turns()))];
  return {point_map_derivative(v, left), point_map_derivative(v, right)};
}

double TangentMap::lift(double x) const { return x + gap(x - std::floor(x)); }

double TangentMap::lift_displacement(double x, long n) const {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "iteration count must be nonnegative");
  if (n > kMaxIterations) throw Error(ErrorCode::IterationBudgetExceeded, "iteration budget is 1e7");
  double a = wrap_turns(x);
  double total = 0.0;
  for (long k = 0; k < n; ++k) {
    const IdealPoint w = evaluate(IdealPoint::from_turns(a));
    total += ccw_gap(a, w.turns());
    a = w.turns();
  }
  return total;
}

std::vector<IdealPoint> TangentMap::orbit(const IdealPoint& v, long n) const {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "iteration count must be nonnegative");
  if (n > kMaxIterations) throw Error(ErrorCode::IterationBudgetExceeded, "iteration budget is 1e7");
  std::vector<IdealPoint> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(v);
  for (long k = 0; k < n; ++k) out.push_back(evaluate(out.back()));
  return out;
}

}  // namespace barbill
