#pragma once

// 1-D search helpers shared by the geometry and root-finding code.

#include <cmath>
#include <utility>

namespace barbill::detail {

inline constexpr double kInvPhi = 0.6180339887498949;

/// Golden-section minimization of a unimodal f on [lo, hi] until the bracket
/// is narrower than `tol`. Returns (argmin, f(argmin)).
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  // Ternary polish on the final bracket, keeping the best evaluated point.
  double best_x = fc <= fd ? c : d;
  double best_f = fc <= fd ? fc : fd;
  for (double x : {a, b, 0.5 * (a + b)}) {
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return {best_x, best_f};
}

/// Bisection for a sign change of g on [lo, hi] with g(lo) = glo, g(hi) = ghi
/// of opposite signs. Returns the endpoint of the final bracket with the
/// smaller |g| as (x, g(x)).
template <class G>
std::pair<double, double> bisect(G&& g, double lo, double hi, double glo, double ghi, double tol) {
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return {mid, gm};
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return std::abs(glo) <= std::abs(ghi) ? std::pair{lo, glo} : std::pair{hi, ghi};
}

}  // namespace barbill::detail
