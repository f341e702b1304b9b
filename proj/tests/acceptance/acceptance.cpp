// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "commands.hpp"
#include "oracles.hpp"

using namespace barbill;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

TangentMap map_of(const Triangle& t) { return TangentMap(ConvexBody::triangle(t)); }

bool is_fraction(const RotationResult& r, int p, int q) {
  return r.certificate && r.certificate->p == p && r.certificate->q == q;
}

double d_prime(double t) { return std::log((1 + t) / (1 - t)); }

// ---------------------------------------------------------------------------

Outcome example_triangle() {
  const auto t0 = Clock::now();
  const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const DiskPoint p{-0.25, s3 / 4}, q{-0.25, -s3 / 4}, r{0.5, 0};
  const double d = hyp_distance(p, q);
  const double d1 = delta_n(d, 1);
  const double delta = foot_and_delta(p, q, r).delta;
  const auto rho = classify_rho(map_of(Triangle(p, q, r)));
  const double secs = seconds_since(t0);
  Outcome o;
  o.ok = std::abs(d - std::log((s5 + 1) / (s5 - 1))) <= 1e-9 && std::abs(d1 - std::log(s5)) <= 1e-9 &&
         std::abs(delta - std::log(s5)) <= 1e-9 && is_fraction(rho, 1, 3) && secs < 5;
  o.detail = fmt::format("d'={:.9f} Delta'_1={:.9f} delta={:.9f} rho={} {:.2f}s", d, d1, delta,
                         is_fraction(rho, 1, 3) ? "1/3" : "?", secs);
  return o;
}

Outcome standard_closure() {
  const auto t0 = Clock::now();
  Outcome o;
  double worst = 0;
  for (double t : {0.5, 0.7, 0.9, 0.95}) {
    const auto cfg = standard_pentagram(t);
    const TangentMap m = map_of(cfg.triangle);
    // Close the loop with five steps of the map from A1.
    IdealPoint v = cfg.pentagram.points[0];
    for (int k = 0; k < 5; ++k) v = m.evaluate(v);
    const double res = std::max(closure_residual(m, cfg.pentagram),
                                angular_distance(v.turns(), cfg.pentagram.points[0].turns()));
    worst = std::max(worst, res);
    const bool cert = certify_rational(m, 2, 5).certificate.has_value();
    o.ok = o.ok && res <= 1e-9 && cert;
  }
  const double secs = seconds_since(t0);
  o.ok = o.ok && secs < 10;
  o.detail = fmt::format("max residual {:.2e}, {:.2f}s", worst, secs);
  return o;
}

Outcome equidistant_closure() {
  Outcome o;
  double closure = 0, delta = 0, xs = 0, ys = 0;
  int cases = 0;
  for (double t : {0.5, 0.9}) {
    for (double f : {0.0, 0.5, -0.5, 0.9, -0.9}) {
      for (Side side : {Side::Left, Side::Right}) {
        const auto e = equidistant_orbit(t, f * t, side);
        closure = std::max(closure, e.closure);
        delta = std::max(delta, e.delta_residual);
        for (double x : e.x_residuals) xs = std::max(xs, std::abs(x));
        for (double y : e.y_residuals) ys = std::max(ys, std::abs(y));
        ++cases;
      }
    }
  }
  o.ok = closure <= 1e-9 && delta <= 1e-10 && xs <= 1e-9;
  o.detail = fmt::format("{} cases: closure {:.2e}, delta {:.2e}, x {:.2e} (y, not enforced: {:.3f})", cases,
                         closure, delta, xs, ys);
  return o;
}

// Triangles with delta between Delta'_2 and half Delta'_1 on labeling (P, Q | R).
std::vector<Triangle> sandwich_samples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> T(0.2, 0.95), F(0.0, 1.0), Y(-0.9, 0.9), C(0.0, 1.0);
  std::vector<Triangle> out;
  while (static_cast<int>(out.size()) < count) {
    const double t = T(rng), f = F(rng), y = Y(rng) * t;
    const double d2 = delta_n(d_prime(t), 2), h = 0.5 * delta_n(d_prime(t), 1);
    const double x = equidistant_x(d2 + f * (h - d2), y) * (C(rng) < 0.5 ? -1.0 : 1.0);
    DiskPoint p{0, t}, q{0, -t}, r{x, y};
    if (C(rng) < 0.5) {
      const auto iso = oracle::random_isometry(rng, 0.6);
      p = iso.apply(p);
      q = iso.apply(q);
      r = iso.apply(r);
    }
    out.emplace_back(p, q, r);
  }
  return out;
}

const std::vector<Triangle>& sandwich_set() {
  static const std::vector<Triangle> set = sandwich_samples(200, 1013);
  return set;
}

Outcome sandwich_sweep() {
  const auto t0 = Clock::now();
  int certified = 0, flagged = 0;
  for (const auto& tri : sandwich_set()) {
    flagged += condition_report(tri).sandwich_any;
    certified += certify_rational(map_of(tri), 2, 5).certificate.has_value();
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.ok = certified == 200 && flagged == 200 && secs < 120;
  o.detail = fmt::format("{}/200 certified 2/5, {}/200 flagged, {:.1f}s", certified, flagged, secs);
  return o;
}

Outcome directionality() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  int above = 0, above_bad = 0, above_unc = 0;
  while (above + above_bad + above_unc < 100) {
    const double rad = 0.05 + 0.35 * U(rng);
    auto pt = [&] {
      const double a = kTwoPi * U(rng), r = rad * std::sqrt(U(rng));
      return DiskPoint(r * std::cos(a), r * std::sin(a));
    };
    const DiskPoint a = pt(), b = pt(), c = pt();
    if (std::abs(cross(b.vec() - a.vec(), c.vec() - a.vec())) < 1e-3 * rad * rad) continue;
    const Triangle tri(a, b, c);
    if (!condition_report(tri).below_delta2_all) continue;
    const auto res = conjecture_check(tri);
    if (res.verdict == Verdict::Above) {
      ++above;
    } else if (res.verdict == Verdict::Uncertified) {
      ++above_unc;
    } else {
      ++above_bad;
    }
  }

  int below = 0, below_bad = 0, below_unc = 0;
  while (below + below_bad + below_unc < 100) {
    const double t = 0.81 + 0.16 * U(rng);
    const double h = 0.5 * delta_n(d_prime(t), 1);
    const double delta = h * (1.05 + 14.0 * U(rng));
    const double x = std::tanh(delta) * (U(rng) < 0.5 ? -1.0 : 1.0);
    DiskPoint p{0, t}, q{0, -t}, r{x, 0};
    const auto iso = oracle::random_isometry(rng, 0.3);
    const Triangle tri(iso.apply(p), iso.apply(q), iso.apply(r));
    if (!condition_report(tri).iso_below) continue;
    const auto res = conjecture_check(tri);
    if (res.verdict == Verdict::Below) {
      ++below;
    } else if (res.verdict == Verdict::Uncertified) {
      ++below_unc;
    } else {
      ++below_bad;
    }
  }
  Outcome o;
  o.ok = above == 100 && below == 100;
  o.detail = fmt::format("strict: {} above, {} uncertified, {} contradictions; isosceles: {} below, {} uncertified, "
                         "{} contradictions",
                         above, above_unc, above_bad, below, below_unc, below_bad);
  return o;
}

Outcome tau_trichotomy() {
  const DiskPoint p1{0, 0.9}, p2{0, -0.9};
  Outcome o;
  std::string detail;
  const std::array<std::pair<double, int>, 3> cases{{{-0.003, 0}, {-0.00554013, 1}, {-0.02, 2}}};
  for (const auto& [x, want] : cases) {
    const DiskPoint p{x, 0};
    const auto res = tau_n(p1, p2, p, 2);
    const int brute = oracle::tau_clusters(p1.vec(), p2.vec(), p.vec(), 2, 20000);
    double worst = 0;
    for (const auto& w : res.roots) worst = std::max(worst, std::abs(oracle::tau_side(p1.vec(), p2.vec(), p.vec(), 2, w.turns())));
    bool ok = res.count == want && brute == want && static_cast<int>(res.roots.size()) == want;
    if (want == 1) ok = ok && worst <= 1e-9;
    o.ok = o.ok && ok;
    detail += fmt::format("{}{}: {} (scan {}, |f| {:.1e})", detail.empty() ? "" : "; ", x, res.count, brute, worst);
  }
  o.detail = detail;
  return o;
}

Outcome orbit_bound() {
  int checked = 0, max_orbits = 0;
  bool ok = true;
  for (const auto& tri : sandwich_set()) {
    const TangentMap m = map_of(tri);
    const auto set = detect_period5(m);
    max_orbits = std::max(max_orbits, static_cast<int>(set.orbits.size()));
    ok = ok && !set.orbits.empty() && set.orbits.size() <= 6;
    for (const auto& p : set.orbits) ok = ok && sorted_shift_ok(m, p) && closure_residual(m, p) <= 1e-9;
    ++checked;
  }
  return {ok, fmt::format("{} triangles, at most {} orbits each", checked, max_orbits)};
}

Outcome properties() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto point = [&](double rmax) {
    const double a = kTwoPi * U(rng), r = rmax * std::sqrt(U(rng));
    return DiskPoint(r * std::cos(a), r * std::sin(a));
  };
  auto triangle = [&] {
    for (;;) {
      const DiskPoint a = point(0.8), b = point(0.8), c = point(0.8);
      if (std::abs(cross(b.vec() - a.vec(), c.vec() - a.vec())) > 0.05) return Triangle(a, b, c);
    }
  };

  double fd_err = 0;
  int mono_fail = 0;
  for (int k = 0; k < 30; ++k) {
    const Triangle tri = triangle();
    const TangentMap m = map_of(tri);
    for (int i = 0; i < 100; ++i) {
      const double x = U(rng);
      bool near = false;
      for (const auto& b : m.breakpoints()) near |= angular_distance(b.u.turns(), x) < 1e-4;
      if (near) continue;
      const double h = 1e-6;
      const double fd = (m.lift(x + h) - m.lift(x - h)) / (2 * h);
      const double an = m.derivative(IdealPoint::from_turns(x)).right;
      fd_err = std::max(fd_err, std::abs(fd - an) / an);
    }
    const auto& v = tri.vertices();
    const Vec2 c = (1.0 / 3) * (v[0].vec() + v[1].vec() + v[2].vec());
    auto shrink = [&](const DiskPoint& p) { return DiskPoint(c + 0.5 * (p.vec() - c)); };
    const TangentMap inner = map_of(Triangle(shrink(v[0]), shrink(v[1]), shrink(v[2])));
    for (int i = 0; i < 200; ++i) mono_fail += m.lift(i / 200.0) > inner.lift(i / 200.0) + 1e-12;
  }

  double side_err = 0;
  for (int k = 0; k < 1000; ++k) {
    const DiskPoint p = point(0.9), q = point(0.9), r = point(0.9);
    if (distance(p.vec(), q.vec()) < 0.05) continue;
    const double fd = foot_and_delta(p, q, r).delta;
    side_err = std::max(side_err, std::abs(fd - delta_from_sides(hyp_distance(q, r), hyp_distance(r, p), hyp_distance(p, q))));
  }

  double iso_err = 0;
  for (int k = 0; k < 300; ++k) {
    const auto iso = oracle::random_isometry(rng, 0.8);
    const DiskPoint p = point(0.8), q = point(0.8), r = point(0.8);
    if (distance(p.vec(), q.vec()) < 0.05) continue;
    iso_err = std::max(iso_err, std::abs(hyp_distance(iso.apply(p), iso.apply(q)) - hyp_distance(p, q)));
    iso_err = std::max(iso_err, std::abs(foot_and_delta(iso.apply(p), iso.apply(q), iso.apply(r)).delta -
                                         foot_and_delta(p, q, r).delta));
  }

  int chain_fail = 0;
  for (int k = 0; k < 50; ++k) {
    const double t = 0.8 + 0.2 * (k + 0.5) / 50;
    const auto c = u_chain(t);
    const double prod = orbit_derivative_product(t);
    const bool ok = c.pu2_over_pu1 < 1.0 / 3 && c.ru3_over_ru2 < 1 / t && c.pu4_over_pu3 <= 0.7 * (1 - t) &&
                    c.ru5_over_ru4 < 1 / t && c.qu6_over_qu5 < (1 + t) / (1 - t) && c.u6_in_arc_a1_u1 &&
                    prod < 1 && prod <= 7 * (t + 1) / (30 * t * t);
    chain_fail += !ok;
  }

  Outcome o;
  o.ok = fd_err <= 1e-4 && mono_fail == 0 && side_err <= 1e-10 && iso_err <= 1e-10 && chain_fail == 0;
  o.detail = fmt::format("fd {:.1e}, inclusion violations {}, sides {:.1e}, isometry {:.1e}, chain failures {}/50",
                         fd_err, mono_fail, side_err, iso_err, chain_fail);
  return o;
}

Outcome sweep_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bbcli_acceptance";
  fs::create_directories(dir);
  bbcli::SweepArgs args;
  args.spec.t_lo = 0.85;
  args.spec.t_hi = 0.95;
  args.spec.r_lo = -0.2;
  args.spec.r_hi = 1.5;
  args.spec.t_steps = args.spec.r_steps = 20;
  auto run = [&](int jobs) {
    args.jobs = jobs;
    args.out = (dir / fmt::format("sweep_{}.csv", jobs)).string();
    std::ostringstream summary;
    const int code = bbcli::cmd_sweep(args, summary);
    std::ifstream in(args.out, std::ios::binary);
    return std::pair{code, std::string(std::istreambuf_iterator<char>(in), {})};
  };
  const auto t0 = Clock::now();
  const auto [c1, serial] = run(1);
  const auto [c8, parallel] = run(8);
  const auto rows = std::count(serial.begin(), serial.end(), '\n') - 1;
  Outcome o;
  o.ok = c1 == 0 && c8 == 0 && rows == 400 && serial == parallel;
  o.detail = fmt::format("{} rows, {}, {:.1f}s", rows, serial == parallel ? "identical" : "different",
                         seconds_since(t0));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"example triangle distances and rho = 1/3", example_triangle},
      {"standard pentagram closure and 2/5 certificates", standard_closure},
      {"equidistant-ellipse orbits close", equidistant_closure},
      {"sandwich samples certify 2/5", sandwich_sweep},
      {"strict and isosceles directionality", directionality},
      {"tau root counts 0/1/2", tau_trichotomy},
      {"period-5 orbit bound and sorted shift", orbit_bound},
      {"property suites", properties},
      {"parallel sweep determinism", sweep_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.ok;
    std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
