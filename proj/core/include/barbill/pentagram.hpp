#pragma once

// Period-5 orbits of triangle bar-billiard maps and the checkers built on
// them: explicit pentagrams in the normalized family P = (0, t), Q = (0, -t),
// orbit enumeration, tau_n root counting for segment maps, the threshold
// conditions comparing delta against Delta'_1 and Delta'_2, and the u-chain
// diagnostics for large isosceles triangles.

#include <array>
#include <string_view>
#include <vector>

#include "barbill/circle_map.hpp"
#include "barbill/klein.hpp"
#include "barbill/rotation.hpp"

namespace barbill {

/// Five ideal points in orbit order v, psi(v), ..., psi^4(v); edge i joins
/// points i and i + 1 (cyclically).
struct Pentagram {
  std::array<IdealPoint, 5> points;
  std::array<Chord, 5> edges;

  static Pentagram from_orbit(const std::array<IdealPoint, 5>& points);
};

/// Max angular distance between psi(points[i]) and points[i + 1].
double closure_residual(const TangentMap& map, const Pentagram& pent);
/// Sorting the five angles, psi advances every sorted index by 2 mod 5.
bool sorted_shift_ok(const TangentMap& map, const Pentagram& pent);

struct PentagramConfig {
  Triangle triangle;
  Pentagram pentagram;
};

/// P = (0, t), Q = (0, -t), R = ((t - 1)/(t + 1), 0) and the orbit
/// A1 = (1, 0), A2, A3 = (0, -1), A4 = (0, 1), A5. Requires 0 < t < 1.
PentagramConfig standard_pentagram(double t);

enum class Side { Left, Right };

struct EquidistantOrbit {
  Triangle triangle;
  Pentagram pentagram;  // starts at A1; for Side::Right the orbit runs A1, A5, A4, A3, A2
  double u = 0.0;       // R = (u, v)
  double closure = 0.0;
  /// |delta(P, Q, R) - Delta'_2(P, Q)|
  double delta_residual = 0.0;
  /// Closed-form minus constructed coordinates for A1, A3, A4, A5. Only the x
  /// residuals are expected to vanish; the y values are reported as found.
  std::array<double, 4> x_residuals{};
  std::array<double, 4> y_residuals{};
};

/// R on the Delta'_2-equidistant ellipse at height v (|v| <= t), left or
/// right of the diameter, with its period-5 orbit built by chord intersections.
EquidistantOrbit equidistant_orbit(double t, double v, Side side);

struct OrbitSet {
  std::vector<Pentagram> orbits;
  int zero_count = 0;
};

/// All period-5 orbits with F^5(x) = x + 2. Triangles only.
OrbitSet detect_period5(const TangentMap& map, int grid = 8192);

struct TauResult {
  int n = 0;
  int count = 0;
  std::vector<IdealPoint> roots;
};

/// Number of w (not an endpoint of line P1P2) with P on the chord from w to
/// psi_{P1P2}^{2n}(w). Throws PointOnLine.
TauResult tau_n(const DiskPoint& p1, const DiskPoint& p2, const DiskPoint& p, int n, int grid = 4096);

/// Signed Euclidean distance from p to the directed line a -> b.
double signed_distance(Vec2 p, Vec2 a, Vec2 b);

// ---------------------------------------------------------------------------

enum class Sandwich { None, Lower, Upper };  // Lower: D2 <= delta <= D1/2; Upper: reversed
std::string_view to_string(Sandwich s) noexcept;

/// Quantities for one labeling (i, j | k): base P_i P_j, apex P_k.
struct LabelingReport {
  std::array<int, 3> labels{};  // input positions i, j, k
  double d_prime = 0.0;         // d'(P_i, P_j)
  double delta = 0.0;           // delta(P_i, P_j, P_k)
  double delta1 = 0.0;
  double delta2 = 0.0;
  double half_delta1 = 0.0;
  bool onethird = false;        // delta >= Delta'_1
  Sandwich sandwich = Sandwich::None;
  bool strict_below_delta2 = false;  // Delta'_2 > delta
  bool isosceles = false;       // d'(P_k, P_i) = d'(P_k, P_j)
  bool iso_log3 = false;        // isosceles and d' > log 3
  bool iso_log9 = false;        // isosceles and d' > log 9
};

struct ConditionReport {
  std::array<LabelingReport, 3> labelings;
  bool onethird_any = false;      // some labeling has delta >= Delta'_1
  bool sandwich_any = false;      // some labeling sandwiched
  int sandwich_labeling = -1;
  bool below_delta2_all = false;  // Delta'_2 > delta for every labeling
  bool iso_above = false;         // isosceles, d' > log 3, delta < Delta'_2
  bool iso_below = false;         // isosceles, d' > log 9, delta > Delta'_1 / 2
};

/// Comparisons use this slack: closed inequalities are widened, strict ones
/// must clear it.
inline constexpr double kConditionTol = 1e-10;

/// Labelings are (p, q | r), (q, r | p), (r, p | q) in argument order.
ConditionReport condition_report(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r);
ConditionReport condition_report(const Triangle& tri);

/// Edges of `pent` whose line passes within 1e-9 of c.
int edge_incidence(const Pentagram& pent, const DiskPoint& c);

// ---------------------------------------------------------------------------
// Diagnostics for the standard triangle with 0.8 < t < 1.

struct UChain {
  std::array<IdealPoint, 6> u;
  double pu2_over_pu1 = 0.0;  // < 1/3
  double ru3_over_ru2 = 0.0;  // < 1/t
  double pu4_over_pu3 = 0.0;  // <= 0.7 (1 - t)
  double ru5_over_ru4 = 0.0;  // < 1/t
  double qu6_over_qu5 = 0.0;  // < (1 + t)/(1 - t)
  bool u6_in_arc_a1_u1 = false;
};

UChain u_chain(double t);
/// psi'_P(u1) psi'_R(u2) psi'_P(u3) psi'_R(u4) psi'_Q(u5).
double orbit_derivative_product(double t);
/// Whether psi^5(v) lies in the open arc (A_i, v), where A_i starts the arc
/// (A_i, psi^3(A_i)) containing v. Throws NotInArc when v is an A_j.
bool contraction_check(double t, const IdealPoint& v);

struct Witness {
  IdealPoint w;
  double residual;  // |X(w) - R|
};

/// w with R = line(v1, w2) ∩ line(v2, w1), where w1, w2 are the second
/// intersections of lines wP and wQ. Requires delta(P,Q,R) = Delta'_1/2.
Witness half_delta1_witness(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r);

// ---------------------------------------------------------------------------

enum class Verdict { Equals, Above, Below, Uncertified };
std::string_view to_string(Verdict v) noexcept;

/// Grid comparisons whose |g| margin is below this are not trusted.
inline constexpr double kUncertainMargin = 1e-7;

struct ConjectureResult {
  ConditionReport report;
  RotationResult rotation;
  bool condition = false;
  Verdict verdict = Verdict::Uncertified;
  bool consistent = false;  // false whenever the verdict is uncertified
};

ConjectureResult conjecture_check(const Triangle& tri, const ClassifyOptions& opts = {});

}  // namespace barbill
