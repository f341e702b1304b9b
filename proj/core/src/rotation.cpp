#include "barbill/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "search.hpp"

namespace barbill {

std::string_view to_string(CertificateKind kind) noexcept {
  return kind == CertificateKind::SignChange ? "sign_change" : "tangency";
}

std::string_view to_string(Relation rel) noexcept {
  switch (rel) {
    case Relation::Less: return "less";
    case Relation::Equal: return "equal";
    case Relation::Greater: return "greater";
  }
  return "unknown";
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

void merge_zeros(std::vector<LiftZero>& zs, const TangentMap& map, int p, int q, const CertifyOptions& opts) {
  std::sort(zs.begin(), zs.end(), [](const LiftZero& a, const LiftZero& b) { return a.x < b.x; });
  auto g = [&](double x) { return map.lift_displacement(x, q) - p; };
  // Neighbouring zeros are one zero when they are within merge_tol, or when g
  // never leaves the tangency band between them (a numerically split double root).
  auto same = [&](const LiftZero& a, const LiftZero& b) {
    const double gap = ccw_gap(a.x, b.x);
    if (gap <= opts.merge_tol) return true;
    if (gap > 1e-3) return false;
    return std::abs(g(a.x + 0.5 * gap)) <= opts.tangency_tol;
  };
  std::vector<LiftZero> out;
  for (const auto& z : zs) {
    if (!out.empty() && same(out.back(), z)) {
      LiftZero& keep = out.back();
      if (keep.kind != z.kind && z.kind == CertificateKind::Tangency) keep.kind = CertificateKind::Tangency;
      if (std::abs(z.residual) < std::abs(keep.residual)) {
        keep.x = z.x;
        keep.residual = z.residual;
      }
      continue;
    }
    out.push_back(z);
  }
  if (out.size() > 1 && same(out.back(), out.front())) {
    if (std::abs(out.back().residual) < std::abs(out.front().residual)) out.front() = out.back();
    out.pop_back();
  }
  zs = std::move(out);
}

}  // namespace

ZeroScan scan_lift_zeros(const TangentMap& map, int p, int q, const CertifyOptions& opts, bool stop_at_first) {
  const int n = std::max(opts.grid, 8);
  auto g = [&](double x) { return map.lift_displacement(x, q) - p; };

  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> gs(static_cast<std::size_t>(n));
  ZeroScan scan;
  scan.min_g = std::numeric_limits<double>::infinity();
  scan.max_g = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    const double v = g(xs[static_cast<std::size_t>(i)]);
    gs[static_cast<std::size_t>(i)] = v;
    scan.min_g = std::min(scan.min_g, v);
    scan.max_g = std::max(scan.max_g, v);
  }
  auto at = [&](int i) { return gs[static_cast<std::size_t>((i % n + n) % n)]; };

  // Sign changes, including the wrap-around cell (g has period 1).
  std::vector<char> sign_cell(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const double g0 = at(i);
    const double g1 = at(i + 1);
    const double x0 = xs[static_cast<std::size_t>(i)];
    const double x1 = x0 + 1.0 / n;
    if (g0 == 0.0) {
      const bool crossing = sign_of(at(i - 1)) * sign_of(g1) < 0;
      scan.zeros.push_back({x0, 0.0, crossing ? CertificateKind::SignChange : CertificateKind::Tangency});
      sign_cell[static_cast<std::size_t>(i)] = 1;
    } else if (g1 != 0.0 && sign_of(g0) != sign_of(g1)) {
      const auto [x, r] = detail::bisect(g, x0, x1, g0, g1, opts.x_tol);
      scan.zeros.push_back({wrap_turns(x), r, CertificateKind::SignChange});
      sign_cell[static_cast<std::size_t>(i)] = 1;
    }
    if (stop_at_first && !scan.zeros.empty() && scan.zeros.back().kind == CertificateKind::SignChange) {
      return scan;
    }
  }

  // Tangency candidates: grid minima of |g| away from any sign change.
  std::vector<int> minima;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(at(i));
    if (a == 0.0) continue;
    if (a <= std::abs(at(i - 1)) && a <= std::abs(at(i + 1))) {
      const auto prev = static_cast<std::size_t>((i - 1 + n) % n);
      if (sign_cell[prev] || sign_cell[static_cast<std::size_t>(i)]) continue;
      minima.push_back(i);
    }
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return std::abs(at(a)) < std::abs(at(b)); });
  if (static_cast<int>(minima.size()) > opts.tangency_candidates) {
    minima.resize(static_cast<std::size_t>(opts.tangency_candidates));
  }
  for (int i : minima) {
    const double x0 = xs[static_cast<std::size_t>(i)];
    const double h = 1.0 / n;
    const auto [x, absg] = detail::golden_min([&](double x) { return std::abs(g(x)); }, x0 - h, x0 + h, opts.x_tol);
    if (absg <= opts.tangency_tol) {
      scan.zeros.push_back({wrap_turns(x), g(x), CertificateKind::Tangency});
      scan.min_g = std::min(scan.min_g, -absg);
      scan.max_g = std::max(scan.max_g, absg);
      if (stop_at_first) break;
    }
  }
  merge_zeros(scan.zeros, map, p, q, opts);
  return scan;
}

RotationResult estimate_rho(const TangentMap& map, long n, double x0) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "need at least one iteration");
  const double disp = map.lift_displacement(x0, n);  // throws IterationBudgetExceeded
  RotationResult r;
  r.estimate = wrap_turns(disp / static_cast<double>(n));
  r.n_iters = n;
  r.error_bound = 1.0 / static_cast<double>(n);
  return r;
}

RotationResult certify_rational(const TangentMap& map, int p, int q, const CertifyOptions& opts) {
  if (!(q >= 2 && q <= 64 && p >= 1 && p < q) || std::gcd(p, q) != 1) {
    throw Error(ErrorCode::InvalidRational,
                "need coprime 1 <= p < q <= 64, got " + std::to_string(p) + "/" + std::to_string(q));
  }
  const ZeroScan scan = scan_lift_zeros(map, p, q, opts, /*stop_at_first=*/true);

  RotationResult r;
  r.n_iters = q;
  const LiftZero* best = nullptr;
  for (const auto& z : scan.zeros) {
    if (!best || (z.kind == CertificateKind::SignChange && best->kind != CertificateKind::SignChange)) best = &z;
  }
  if (best) {
    r.estimate = static_cast<double>(p) / q;
    r.error_bound = 0.0;
    r.certificate = RationalCertificate{p, q, best->x, best->residual, best->kind};
    r.comparison = Comparison{p, q, Relation::Equal};
    return r;
  }
  // g keeps one sign m <= g <= M, so (p + m)/q <= rho <= (p + M)/q.
  const double lo = (p + scan.min_g) / q;
  const double hi = (p + scan.max_g) / q;
  r.estimate = wrap_turns(0.5 * (lo + hi));
  r.error_bound = 0.5 * (hi - lo);
  r.comparison = Comparison{p, q, scan.min_g > 0.0 ? Relation::Greater : Relation::Less,
                            scan.min_g > 0.0 ? scan.min_g : -scan.max_g};
  return r;
}

RotationResult classify_rho(const TangentMap& map, const ClassifyOptions& opts) {
  if (map.body().kind() != BodyKind::Polygon || map.body().vertices().size() != 3) {
    throw Error(ErrorCode::InvalidBody, "rotation-number classification is defined for triangles");
  }
  RotationResult r = estimate_rho(map, opts.iters, 0.0);
  const double n = static_cast<double>(r.n_iters);

  for (int q = 2; q <= std::min(opts.q_max, 64) && !r.certificate; ++q) {
    const int p = static_cast<int>(std::lround(q * r.estimate));
    if (p < 1 || p >= q || std::gcd(p, q) != 1) continue;
    if (std::abs(q * r.estimate - p) > q / n + 1e-6) continue;
    const RotationResult c = certify_rational(map, p, q, opts.certify);
    if (c.certificate) r.certificate = c.certificate;
  }

  const int rp = opts.ref_p, rq = opts.ref_q;
  if (r.certificate) {
    const long lhs = static_cast<long>(r.certificate->p) * rq;
    const long rhs = static_cast<long>(rp) * r.certificate->q;
    const double gap = std::abs(static_cast<double>(lhs - rhs)) / r.certificate->q;
    r.comparison = Comparison{rp, rq, lhs < rhs ? Relation::Less : lhs > rhs ? Relation::Greater : Relation::Equal, gap};
  } else {
    const RotationResult ref = certify_rational(map, rp, rq, opts.certify);
    if (ref.certificate) r.certificate = ref.certificate;
    r.comparison = ref.comparison;
  }

  const auto out_of_range = [](const std::string& why) {
    throw Error(ErrorCode::OutOfTheoreticalRange, "rotation number outside [1/3, 1/2): " + why);
  };
  if (r.certificate) {
    const int p = r.certificate->p, q = r.certificate->q;
    if (3 * p < q || 2 * p >= q) out_of_range(std::to_string(p) + "/" + std::to_string(q));
  }
  if (r.estimate < 1.0 / 3.0 - r.error_bound - 1e-9 || r.estimate > 0.5 + r.error_bound) {
    out_of_range("estimate " + std::to_string(r.estimate));
  }
  return r;
}

}  // namespace barbill
