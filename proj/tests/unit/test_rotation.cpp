#include <cmath>
#include <random>

#include "doctest.h"

#include <barbill/pentagram.hpp>
#include <barbill/rotation.hpp>

using namespace barbill;
using doctest::Approx;

namespace {

const double kS3 = std::sqrt(3.0);

TangentMap tri(const Triangle& t) { return TangentMap(ConvexBody::triangle(t)); }
TangentMap normalized(double t, double r) { return tri(Triangle({0, t}, {0, -t}, {r, 0})); }
TangentMap equilateral() { return tri(Triangle({-0.25, kS3 / 4}, {-0.25, -kS3 / 4}, {0.5, 0})); }

double g(const TangentMap& m, double x, int p, int q) { return m.lift_displacement(x, q) - p; }

}  // namespace

TEST_CASE("estimates") {
  const TangentMap pt(ConvexBody::point({0.3, -0.2}));
  const auto a = estimate_rho(pt, 1000);
  CHECK(std::abs(a.estimate - 0.5) <= a.error_bound);
  CHECK(a.error_bound == Approx(1e-3));

  const auto b = estimate_rho(equilateral(), 10000);
  CHECK(std::abs(b.estimate - 1.0 / 3) <= b.error_bound);
  const auto c = estimate_rho(normalized(0.9, -1.0 / 19), 10000);
  CHECK(std::abs(c.estimate - 0.4) <= c.error_bound);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const TangentMap m = normalized(0.7, 0.2);
  const long n = 5000;
  CHECK(std::abs(estimate_rho(m, n, U(rng)).estimate - estimate_rho(m, n, U(rng)).estimate) <= 2.0 / n);
}

TEST_CASE("certification") {
  const TangentMap six = normalized(0.9, -1.0 / 19);
  const auto r = certify_rational(six, 2, 5);
  REQUIRE(r.certificate);
  CHECK(std::abs(r.certificate->residual) <= 1e-9);
  // Witness sits on the orbit of A1 = angle 0.
  const double w = r.certificate->witness_x;
  bool on_orbit = false;
  for (double a : {0.0, 0.25, 0.75, 1.0}) on_orbit |= std::abs(w - a) < 1e-6;
  on_orbit |= std::abs(w - IdealPoint::from_vector({-0.19 / 1.81, 1.8 / 1.81}).turns()) < 1e-6;
  on_orbit |= std::abs(w - IdealPoint::from_vector({-0.19 / 1.81, -1.8 / 1.81}).turns()) < 1e-6;
  CHECK(on_orbit);
  // A freshly built map reproduces the residual.
  CHECK(std::abs(g(normalized(0.9, -1.0 / 19), w, 2, 5)) <= 1e-9);

  const auto third = certify_rational(equilateral(), 1, 3);
  REQUIRE(third.certificate);
  CHECK(third.certificate->p == 1);

  const auto tiny = certify_rational(tri(Triangle({0, 0.1}, {0, -0.1}, {-0.05, 0})), 2, 5);
  CHECK_FALSE(tiny.certificate);
  REQUIRE(tiny.comparison);
  CHECK(tiny.comparison->relation == Relation::Greater);
  CHECK(tiny.comparison->margin > 0);

  for (auto [p, q] : {std::pair{2, 4}, std::pair{0, 3}, std::pair{3, 3}, std::pair{1, 65}, std::pair{1, 1}}) {
    try {
      certify_rational(six, p, q);
      FAIL("accepted " << p << "/" << q);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidRational);
    }
  }
}

TEST_CASE("sign change certificates bracket a root") {
  const TangentMap m = normalized(0.9, -0.02);
  const auto r = certify_rational(m, 2, 5);
  REQUIRE(r.certificate);
  if (r.certificate->kind == CertificateKind::SignChange) {
    const auto scan = scan_lift_zeros(m, 2, 5, {});
    CHECK(scan.min_g < 0);
    CHECK(scan.max_g > 0);
  }
}

TEST_CASE("classification") {
  const auto a = classify_rho(equilateral());
  REQUIRE(a.certificate);
  CHECK(a.certificate->p == 1);
  CHECK(a.certificate->q == 3);

  const auto b = classify_rho(normalized(0.9, -0.02));
  REQUIRE(b.certificate);
  CHECK(b.certificate->p == 2);
  CHECK(b.certificate->q == 5);

  const auto c = classify_rho(normalized(0.9, -0.2));
  CHECK_FALSE((c.certificate && c.certificate->p == 2 && c.certificate->q == 5));
  CHECK(c.estimate < 0.4);
  if (c.comparison) CHECK(c.comparison->relation == Relation::Less);

  CHECK_THROWS_AS(classify_rho(TangentMap(ConvexBody::point({0, 0}))), Error);
}

TEST_CASE("monotonicity and upper bound") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0.2, 0.95), S(0.3, 0.9);
  const long n = 20000;
  for (int i = 0; i < 20; ++i) {
    const double t = U(rng), r = -S(rng) * t, s = S(rng);
    const auto big = estimate_rho(normalized(t, r), n);
    const auto small = estimate_rho(normalized(s * t, s * r), n);
    CHECK(big.estimate <= small.estimate + 2.0 / n);
    CHECK(big.estimate <= 0.5 + 1.0 / n);
  }
}
