#include "barbill/pentagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "search.hpp"

namespace barbill {

namespace {

constexpr double kClosureTol = 1e-9;
constexpr double kIncidenceTol = 1e-9;

void require_interior_t(double t) {
  if (!(t > 0.0 && t < 1.0) || t * t >= 1.0 - kBoundaryEps) {
    throw Error(ErrorCode::OutOfRange, "t must lie in (0, 1), got " + std::to_string(t));
  }
}

void require_chain_t(double t) {
  if (!(t > 0.8 && t < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "t must lie in (0.8, 1), got " + std::to_string(t));
  }
  require_interior_t(t);
}

void require_triangle(const TangentMap& map) {
  if (map.body().kind() != BodyKind::Polygon || map.body().vertices().size() != 3) {
    throw Error(ErrorCode::InvalidBody, "expected a triangle");
  }
}

IdealPoint iterate(const TangentMap& map, IdealPoint v, int n) {
  for (int k = 0; k < n; ++k) v = map.evaluate(v);
  return v;
}

void require_closed(const TangentMap& map, const Pentagram& pent) {
  const double res = closure_residual(map, pent);
  if (!(res <= kClosureTol)) {
    throw Error(ErrorCode::InvariantViolation, "pentagram does not close: residual " + std::to_string(res));
  }
}

}  // namespace

Pentagram Pentagram::from_orbit(const std::array<IdealPoint, 5>& pts) {
  auto chord = [&](int i) { return Chord{pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>((i + 1) % 5)]}; };
  return {pts, {chord(0), chord(1), chord(2), chord(3), chord(4)}};
}

double closure_residual(const TangentMap& map, const Pentagram& pent) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const IdealPoint img = map.evaluate(pent.points[i]);
    worst = std::max(worst, angular_distance(img.turns(), pent.points[(i + 1) % 5].turns()));
  }
  return worst;
}

bool sorted_shift_ok(const TangentMap& map, const Pentagram& pent) {
  std::array<int, 5> order{};
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return pent.points[static_cast<std::size_t>(a)].turns() < pent.points[static_cast<std::size_t>(b)].turns();
  });
  auto rank_of_angle = [&](double turns) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 5; ++k) {
      const double d = angular_distance(turns, pent.points[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].turns());
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best_d <= kClosureTol ? best : -1;
  };
  for (int k = 0; k < 5; ++k) {
    const IdealPoint img = map.evaluate(pent.points[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]);
    const int j = rank_of_angle(img.turns());
    if (j < 0 || (j - k + 5) % 5 != 2) return false;
  }
  return true;
}

PentagramConfig standard_pentagram(double t) {
  require_interior_t(t);
  const double r = (t - 1.0) / (t + 1.0);
  Triangle tri(DiskPoint(0.0, t), DiskPoint(0.0, -t), DiskPoint(r, 0.0));
  const double s = 1.0 / (t * t + 1.0);
  const Pentagram pent = Pentagram::from_orbit({
      IdealPoint::from_vector({1.0, 0.0}),
      IdealPoint::from_vector({(t * t - 1.0) * s, 2.0 * t * s}),
      IdealPoint::from_vector({0.0, -1.0}),
      IdealPoint::from_vector({0.0, 1.0}),
      IdealPoint::from_vector({(t * t - 1.0) * s, -2.0 * t * s}),
  });
  require_closed(TangentMap(ConvexBody::triangle(tri)), pent);
  return {tri, pent};
}

EquidistantOrbit equidistant_orbit(double t, double v, Side side) {
  require_interior_t(t);
  if (!(std::abs(v) <= t)) throw Error(ErrorCode::OutOfRange, "need |v| <= t");
  const DiskPoint dp(0.0, t), dq(0.0, -t);
  const double d2 = delta_n(hyp_distance(dp, dq), 2);
  const double ux = equidistant_x(d2, v);
  if (ux < 1e-12) throw Error(ErrorCode::DegenerateU, "u collapses to 0");

  // Left configuration (u < 0); the right one is its mirror image.
  const Vec2 P{0.0, t}, Q{0.0, -t};
  const double s = std::sqrt(1.0 - v * v);
  const Vec2 a2{-s, v};
  const Vec2 a1 = second_intersection(a2, P);
  const Vec2 a3 = second_intersection(a2, Q);
  const Vec2 a4 = second_intersection(a3, P);
  const Vec2 a5 = second_intersection(a1, Q);

  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  const double den1 = 2 * v * t - t2 - 1;
  const double den3 = 2 * v * t + t2 + 1;
  const double den4 = 4 * v * t3 + t4 + 4 * v * t + 6 * t2 + 1;
  const double den5 = 4 * v * t3 - t4 + 4 * v * t - 6 * t2 - 1;
  const double sq = t4 - 2 * t2 + 1;
  const std::array<Vec2, 4> closed = {{
      {s * (t2 - 1) / den1, -(v * t2 + v - 2 * t) / den1},
      {-s * (t2 - 1) / den3, -(v * t2 + v + 2 * t) / den3},
      {-s * sq / den4, (v * t4 + 6 * v * t2 + 4 * t3 + v + 4 * t) / den4},
      {s * sq / den5, -(v * t4 + 6 * v * t2 - 4 * t3 + v - 4 * t) / den5},
  }};
  const std::array<Vec2, 4> built = {a1, a3, a4, a5};

  auto ideal = [&](Vec2 a) { return IdealPoint::from_vector(side == Side::Left ? a : Vec2{-a.x, a.y}); };
  const double u = side == Side::Left ? -ux : ux;
  EquidistantOrbit out{
      Triangle(dp, dq, DiskPoint(u, v)),
      side == Side::Left ? Pentagram::from_orbit({ideal(a1), ideal(a2), ideal(a3), ideal(a4), ideal(a5)})
                         : Pentagram::from_orbit({ideal(a1), ideal(a5), ideal(a4), ideal(a3), ideal(a2)}),
      u};
  for (std::size_t i = 0; i < 4; ++i) {
    out.x_residuals[i] = closed[i].x - built[i].x;
    out.y_residuals[i] = closed[i].y - built[i].y;
  }

  const TangentMap map(ConvexBody::triangle(out.triangle));
  out.closure = closure_residual(map, out.pentagram);
  out.delta_residual = std::abs(foot_and_delta(dp, dq, DiskPoint(out.u, v)).delta - d2);
  require_closed(map, out.pentagram);
  return out;
}

OrbitSet detect_period5(const TangentMap& map, int grid) {
  require_triangle(map);
  CertifyOptions opts;
  opts.grid = grid;
  opts.tangency_candidates = 64;
  const ZeroScan scan = scan_lift_zeros(map, 2, 5, opts);

  OrbitSet out;
  out.zero_count = static_cast<int>(scan.zeros.size());
  std::vector<char> owned(scan.zeros.size(), 0);
  for (std::size_t i = 0; i < scan.zeros.size(); ++i) {
    if (owned[i]) continue;
    const auto orb = map.orbit(IdealPoint::from_turns(scan.zeros[i].x), 4);
    for (std::size_t j = i; j < scan.zeros.size(); ++j) {
      for (const auto& pt : orb) {
        if (angular_distance(scan.zeros[j].x, pt.turns()) <= 1e-7) owned[j] = 1;
      }
    }
    const Pentagram pent = Pentagram::from_orbit({orb[0], orb[1], orb[2], orb[3], orb[4]});
    if (closure_residual(map, pent) <= kClosureTol) out.orbits.push_back(pent);
  }
  return out;
}

double signed_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len = std::max(norm(d), std::numeric_limits<double>::min());
  return cross(d, p - a) / len;
}

TauResult tau_n(const DiskPoint& p1, const DiskPoint& p2, const DiskPoint& p, int n, int grid) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "n must be at least 1");
  const TangentMap map(ConvexBody::segment(p1, p2));
  if (distance_to_line(p.vec(), p1.vec(), p2.vec()) <= 1e-12) {
    throw Error(ErrorCode::PointOnLine, "P lies on line P1P2");
  }
  const Chord line = chord_through(p1, p2);
  auto f = [&](double turns) {
    const IdealPoint w = IdealPoint::from_turns(turns);
    return signed_distance(p.vec(), w.vec(), iterate(map, w, 2 * n).vec());
  };
  constexpr double kTangency = 1e-9;
  const int m = std::max(grid, 8);

  TauResult out;
  out.n = n;
  std::vector<double> roots;  // unwrapped within the current arc
  for (const auto& [from, to] : {std::pair{line.a, line.b}, std::pair{line.b, line.a}}) {
    const double a0 = from.turns();
    const double len = ccw_gap(a0, to.turns());
    const double h = len / m;
    // Uniform samples, plus log-spaced ones toward both ends: far from the
    // line one root crowds the endpoint, where the segment map acts by scaling.
    std::vector<double> xs;
    for (int k = 1; k < m; ++k) xs.push_back(a0 + k * h);
    constexpr int kEndSamples = 2048;
    constexpr double kMinOffset = 1e-11;  // above the breakpoint snap
    const double ratio = std::pow(kMinOffset / h, 1.0 / kEndSamples);
    double off = h * ratio;
    for (int j = 0; j < kEndSamples; ++j, off *= ratio) {
      xs.push_back(a0 + off);
      xs.push_back(a0 + len - off);
    }
    std::sort(xs.begin(), xs.end());
    const int ns = static_cast<int>(xs.size());
    std::vector<double> fs(xs.size());
    for (int k = 0; k < ns; ++k) fs[static_cast<std::size_t>(k)] = f(xs[static_cast<std::size_t>(k)]);
    auto at = [&](int k) { return fs[static_cast<std::size_t>(k)]; };
    auto x_at = [&](int k) { return xs[static_cast<std::size_t>(k)]; };

    std::vector<double> arc_roots;
    std::vector<char> crossing(xs.size(), 0);
    for (int k = 0; k + 1 < ns; ++k) {
      if (at(k) == 0.0) {
        arc_roots.push_back(x_at(k));
        crossing[static_cast<std::size_t>(k)] = 1;
      } else if (at(k + 1) != 0.0 && (at(k) < 0.0) != (at(k + 1) < 0.0)) {
        arc_roots.push_back(detail::bisect(f, x_at(k), x_at(k + 1), at(k), at(k + 1), 1e-15).first);
        crossing[static_cast<std::size_t>(k)] = 1;
      }
    }
    std::vector<int> minima;
    for (int k = 1; k + 1 < ns; ++k) {
      const double v = std::abs(at(k));
      if (v > 0.0 && v <= std::abs(at(k - 1)) && v <= std::abs(at(k + 1)) &&
          !crossing[static_cast<std::size_t>(k - 1)] && !crossing[static_cast<std::size_t>(k)]) {
        minima.push_back(k);
      }
    }
    std::sort(minima.begin(), minima.end(), [&](int x, int y) { return std::abs(at(x)) < std::abs(at(y)); });
    if (minima.size() > 16) minima.resize(16);
    for (int k : minima) {
      const auto [x, v] = detail::golden_min([&](double s) { return std::abs(f(s)); }, x_at(k - 1), x_at(k + 1), 1e-13);
      if (v <= kTangency) arc_roots.push_back(x);
    }

    // A double root may split into two nearby simple roots under rounding;
    // they are one root while f stays inside the tangency band between them.
    std::sort(arc_roots.begin(), arc_roots.end());
    std::vector<double> merged;
    for (double x : arc_roots) {
      if (!merged.empty()) {
        const double prev = merged.back();
        if (x - prev <= 1e-8 || (x - prev < 1e-3 && std::abs(f(0.5 * (x + prev))) <= kTangency)) continue;
      }
      merged.push_back(x);
    }
    roots.insert(roots.end(), merged.begin(), merged.end());
  }
  for (double x : roots) out.roots.push_back(IdealPoint::from_turns(x));
  out.count = static_cast<int>(out.roots.size());
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Sandwich s) noexcept {
  switch (s) {
    case Sandwich::None: return "none";
    case Sandwich::Lower: return "lower";
    case Sandwich::Upper: return "upper";
  }
  return "unknown";
}

ConditionReport condition_report(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r) {
  const std::array<DiskPoint, 3> v{p, q, r};
  const double log3 = std::log(3.0), log9 = std::log(9.0);
  constexpr double tol = kConditionTol;

  ConditionReport rep;
  rep.below_delta2_all = true;
  for (int l = 0; l < 3; ++l) {
    const int i = l, j = (l + 1) % 3, k = (l + 2) % 3;
    const auto& vi = v[static_cast<std::size_t>(i)];
    const auto& vj = v[static_cast<std::size_t>(j)];
    const auto& vk = v[static_cast<std::size_t>(k)];
    LabelingReport& L = rep.labelings[static_cast<std::size_t>(l)];
    L.labels = {i, j, k};
    L.d_prime = hyp_distance(vi, vj);
    L.delta = foot_and_delta(vi, vj, vk).delta;
    L.delta1 = delta_n(L.d_prime, 1);
    L.delta2 = delta_n(L.d_prime, 2);
    L.half_delta1 = 0.5 * L.delta1;
    L.onethird = L.delta >= L.delta1 - tol;
    if (L.delta2 - tol <= L.delta && L.delta <= L.half_delta1 + tol) {
      L.sandwich = Sandwich::Lower;
    } else if (L.half_delta1 - tol <= L.delta && L.delta <= L.delta2 + tol) {
      L.sandwich = Sandwich::Upper;
    }
    L.strict_below_delta2 = L.delta2 - L.delta > tol;
    L.isosceles = std::abs(hyp_distance(vk, vi) - hyp_distance(vk, vj)) <= 1e-9;
    L.iso_log3 = L.isosceles && L.d_prime > log3;
    L.iso_log9 = L.isosceles && L.d_prime > log9;

    rep.onethird_any = rep.onethird_any || L.onethird;
    if (L.sandwich != Sandwich::None && !rep.sandwich_any) {
      rep.sandwich_any = true;
      rep.sandwich_labeling = l;
    }
    rep.below_delta2_all = rep.below_delta2_all && L.strict_below_delta2;
    rep.iso_above = rep.iso_above || (L.iso_log3 && L.strict_below_delta2);
    rep.iso_below = rep.iso_below || (L.iso_log9 && L.delta - L.half_delta1 > tol);
  }
  return rep;
}

ConditionReport condition_report(const Triangle& tri) {
  return condition_report(tri[tri.stored_index(0)], tri[tri.stored_index(1)], tri[tri.stored_index(2)]);
}

int edge_incidence(const Pentagram& pent, const DiskPoint& c) {
  int count = 0;
  for (const auto& e : pent.edges) {
    if (distance_to_line(c.vec(), e.a.vec(), e.b.vec()) <= kIncidenceTol) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------

UChain u_chain(double t) {
  require_chain_t(t);
  const auto [tri, pent] = standard_pentagram(t);
  const DiskPoint p(0.0, t), q(0.0, -t), r((t - 1.0) / (t + 1.0), 0.0);
  const TangentMap map(ConvexBody::triangle(tri));

  const Chord qr = chord_through(r, q);  // a: beyond R (upper left), b: beyond Q
  UChain out{{qr.a, qr.a, qr.b, qr.b, qr.b, qr.b}};
  out.u[0] = second_intersection(qr.a, p);
  for (std::size_t i = 3; i < 6; ++i) out.u[i] = map.evaluate(out.u[i - 1]);

  auto dist = [](const DiskPoint& a, const IdealPoint& b) { return distance(a.vec(), b.vec()); };
  const auto& u = out.u;
  out.pu2_over_pu1 = dist(p, u[1]) / dist(p, u[0]);
  out.ru3_over_ru2 = dist(r, u[2]) / dist(r, u[1]);
  out.pu4_over_pu3 = dist(p, u[3]) / dist(p, u[2]);
  out.ru5_over_ru4 = dist(r, u[4]) / dist(r, u[3]);
  out.qu6_over_qu5 = dist(q, u[5]) / dist(q, u[4]);
  out.u6_in_arc_a1_u1 = in_open_arc(u[5].turns(), pent.points[0].turns(), u[0].turns());
  return out;
}

double orbit_derivative_product(double t) {
  const UChain c = u_chain(t);
  const DiskPoint p(0.0, t), q(0.0, -t), r((t - 1.0) / (t + 1.0), 0.0);
  return point_map_derivative(c.u[0], p) * point_map_derivative(c.u[1], r) * point_map_derivative(c.u[2], p) *
         point_map_derivative(c.u[3], r) * point_map_derivative(c.u[4], q);
}

bool contraction_check(double t, const IdealPoint& v) {
  require_chain_t(t);
  const auto [tri, pent] = standard_pentagram(t);
  const TangentMap map(ConvexBody::triangle(tri));
  const auto& a = pent.points;
  for (const auto& ai : a) {
    if (angular_distance(v.turns(), ai.turns()) <= 1e-12) {
      throw Error(ErrorCode::NotInArc, "v coincides with a pentagram vertex");
    }
  }
  const double img = iterate(map, v, 5).turns();
  bool found = false, ok = true;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!in_open_arc(v.turns(), a[i].turns(), a[(i + 3) % 5].turns())) continue;
    found = true;
    ok = ok && in_open_arc(img, a[i].turns(), v.turns());
  }
  if (!found) throw Error(ErrorCode::NotInArc, "v lies in no arc (A_i, psi^3(A_i))");
  return ok;
}

Witness half_delta1_witness(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r) {
  const double half = 0.5 * delta_n(hyp_distance(p, q), 1);
  const double delta = foot_and_delta(p, q, r).delta;
  if (std::abs(delta - half) > 1e-8) {
    throw Error(ErrorCode::PreconditionFailed,
                "delta differs from Delta'_1/2 by " + std::to_string(std::abs(delta - half)));
  }
  const Chord line = chord_through(p, q);
  const Vec2 v1 = line.a.vec(), v2 = line.b.vec();
  auto objective = [&](double turns) {
    const IdealPoint w = IdealPoint::from_turns(turns);
    if (angular_distance(turns, line.a.turns()) < 1e-9 || angular_distance(turns, line.b.turns()) < 1e-9) {
      return std::numeric_limits<double>::infinity();
    }
    const Vec2 w1 = second_intersection(w.vec(), p.vec());
    const Vec2 w2 = second_intersection(w.vec(), q.vec());
    const auto x = line_intersection(v1, w2, v2, w1);
    return x ? distance(*x, r.vec()) : std::numeric_limits<double>::infinity();
  };

  constexpr int kGrid = 2048;
  std::vector<double> vals(kGrid);
  for (int k = 0; k < kGrid; ++k) vals[static_cast<std::size_t>(k)] = objective(static_cast<double>(k) / kGrid);
  auto at = [&](int k) { return vals[static_cast<std::size_t>((k + kGrid) % kGrid)]; };
  std::vector<int> minima;
  for (int k = 0; k < kGrid; ++k) {
    if (std::isfinite(at(k)) && at(k) <= at(k - 1) && at(k) <= at(k + 1)) minima.push_back(k);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return at(a) < at(b); });
  if (minima.size() > 3) minima.resize(3);

  Witness best{IdealPoint::from_turns(0.0), std::numeric_limits<double>::infinity()};
  for (int k : minima) {
    const double h = 1.0 / kGrid;
    const double c = static_cast<double>(k) / kGrid;
    const auto [x, fx] = detail::golden_min(objective, c - h, c + h, 1e-14);
    if (fx < best.residual) best = {IdealPoint::from_turns(x), fx};
  }
  if (!(best.residual <= 1e-8)) {
    throw Error(ErrorCode::NoWitness, "closest approach " + std::to_string(best.residual));
  }
  return best;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Equals: return "equals";
    case Verdict::Above: return "above";
    case Verdict::Below: return "below";
    case Verdict::Uncertified: return "uncertified";
  }
  return "unknown";
}

ConjectureResult conjecture_check(const Triangle& tri, const ClassifyOptions& opts) {
  ConjectureResult out;
  out.report = condition_report(tri);
  out.condition = out.report.sandwich_any;
  out.rotation = classify_rho(TangentMap(ConvexBody::triangle(tri)), opts);

  const auto& rot = out.rotation;
  if (rot.certificate && rot.certificate->p * opts.ref_q == opts.ref_p * rot.certificate->q) {
    out.verdict = Verdict::Equals;
  } else if (rot.comparison) {
    switch (rot.comparison->relation) {
      case Relation::Greater: out.verdict = Verdict::Above; break;
      case Relation::Less: out.verdict = Verdict::Below; break;
      case Relation::Equal: out.verdict = Verdict::Equals; break;
    }
    if (!rot.certificate && out.verdict != Verdict::Equals && rot.comparison->margin < kUncertainMargin) {
      out.verdict = Verdict::Uncertified;
    }
  }
  out.consistent = out.verdict != Verdict::Uncertified && out.condition == (out.verdict == Verdict::Equals);
  return out;
}

}  // namespace barbill
