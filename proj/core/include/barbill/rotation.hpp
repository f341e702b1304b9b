#pragma once

// Rotation numbers of bar-billiard maps. Estimates come from lift
// iteration; rational values p/q are certified numerically by locating a zero
// of g(x) = F^q(x) - x - p on a grid refined by bisection (sign change) or by
// golden-section on |g| (tangency, i.e. a semi-stable periodic orbit).

#include <optional>
#include <string_view>
#include <vector>

#include "barbill/circle_map.hpp"

namespace barbill {

enum class CertificateKind { SignChange, Tangency };

/// Order of rho relative to a queried fraction p/q.
enum class Relation { Less, Equal, Greater };

std::string_view to_string(CertificateKind kind) noexcept;
std::string_view to_string(Relation rel) noexcept;

struct RationalCertificate {
  int p = 0;
  int q = 1;
  double witness_x = 0.0;  // in [0, 1)
  double residual = 0.0;   // F^q(witness) - witness - p
  CertificateKind kind = CertificateKind::SignChange;
};

struct Comparison {
  int p = 0;
  int q = 1;
  Relation relation = Relation::Equal;
  /// How far g = F^q - id - p stays from zero (0 when equal).
  double margin = 0.0;
};

struct RotationResult {
  double estimate = 0.0;  // in [0, 1)
  long n_iters = 0;
  double error_bound = 1.0;
  std::optional<RationalCertificate> certificate;
  std::optional<Comparison> comparison;
};

struct CertifyOptions {
  int grid = 4096;
  double x_tol = 1e-12;
  double tangency_tol = 1e-9;
  /// Zeros closer than this (in turns) are the same zero.
  double merge_tol = 1e-8;
  /// Number of grid minima of |g| refined when looking for tangencies.
  int tangency_candidates = 16;
};

struct ClassifyOptions {
  long iters = 100'000;
  int q_max = 64;
  /// Fraction every result is compared against.
  int ref_p = 2;
  int ref_q = 5;
  CertifyOptions certify;
};

/// A zero of g(x) = F^q(x) - x - p on [0, 1).
struct LiftZero {
  double x = 0.0;
  double residual = 0.0;
  CertificateKind kind = CertificateKind::SignChange;
};

struct ZeroScan {
  double min_g = 0.0;
  double max_g = 0.0;
  std::vector<LiftZero> zeros;  // sorted by x, merged
};

/// Grid scan of g for zeros. With `stop_at_first`, returns as soon as one
/// zero is known (sign changes are preferred over tangencies).
ZeroScan scan_lift_zeros(const TangentMap& map, int p, int q, const CertifyOptions& opts,
                         bool stop_at_first = false);

/// rho ~ (F^n(x0) - x0) / n with error bound 1/n.
RotationResult estimate_rho(const TangentMap& map, long n, double x0 = 0.0);

/// Certificate for rho = p/q, or a strict comparison when g keeps one sign.
/// Requires 1 <= p < q <= 64 and gcd(p, q) = 1, else Error{InvalidRational}.
RotationResult certify_rational(const TangentMap& map, int p, int q, const CertifyOptions& opts = {});

/// Estimate, then certify the nearby fractions with q <= q_max. Triangles only;
/// throws Error{OutOfTheoreticalRange} if the result leaves [1/3, 1/2).
RotationResult classify_rho(const TangentMap& map, const ClassifyOptions& opts = {});

}  // namespace barbill
