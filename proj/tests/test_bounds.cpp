#include <doctest.h>

#include <cmath>
#include <numbers>

#include "borelsum/bounds.hpp"
#include "borelsum/errors.hpp"
#include "oracles.hpp"

using namespace borelsum;

namespace {

constexpr double kPi = std::numbers::pi;

Contour unit_ray(double length = 1.0) {
  std::vector<Segment> segs;
  segs.push_back(make_ray(0.0, length));
  return Contour(std::move(segs));
}

AnalyticFunction inv_one_plus_u() {
  return AnalyticFunction::rational({Complex(-1.0, 0.0)}, {Complex(1.0, 0.0)});
}

BoundCertificate toy_certificate() {
  BoundCertificate cert;
  cert.K1 = cert.K2 = cert.c = 1.0;
  cert.eta = 1.0;
  cert.s1 = 0.5;
  cert.rho = 2.0;
  cert.epsilon = kPi / 6.0;
  cert.g_s1 = Complex(1.0, 0.0);
  cert.C_N = {1.0, 1.0, 1.0};
  cert.sector = SectorRegion::from_arg_range(0.0, 0.0, kPi / 6.0);
  return cert;
}

}  // namespace

TEST_CASE("k-delta constants majorize y^k e^{-delta y}") {
  CHECK(k_delta_constant(0, 0.5) == 1.0);
  for (int k : {1, 2, 5}) {
    for (double delta : {0.25, 0.5, 0.9}) {
      const double K = k_delta_constant(k, delta);
      for (double y = 0.01; y < 60.0; y *= 1.4)
        CHECK(std::pow(y, k) <= K * std::exp(delta * y) * (1.0 + 1e-12));
    }
  }
  CHECK_THROWS_AS(k_delta_constant(2, 1.0), DeltaOutOfRange);
  CHECK_THROWS_AS(k_delta_constant(2, 0.0), DeltaOutOfRange);
}

TEST_CASE("tail envelope formula and sector guard") {
  const BoundCertificate cert = toy_certificate();
  // sin(pi/6) = 1/2, so the exponent at |lambda| = 10 is 5.
  CHECK(tail_envelope(cert, Complex(10.0, 0.0)) ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(tail_envelope(cert, Complex(-10.0, 1.0)), OutOfSector);
}

TEST_CASE("incomplete tail: exact value, sharp form, envelope") {
  const BoundCertificate cert = toy_certificate();
  const Complex lambda(10.0, 0.0);  // |lambda G(s1)| sin eps = 5

  SUBCASE("worked numbers at k = 0, delta = 1/2") {
    const double bound = incomplete_tail_bound(cert, 0, lambda, 0.5);
    CHECK(bound == doctest::Approx(2.0 * std::exp(-2.5) / 5.0).epsilon(1e-13));
    const double sharp = incomplete_tail_sharp(cert, 0, lambda);
    CHECK(sharp == doctest::Approx(std::exp(-5.0) / 5.0).epsilon(1e-12));
    CHECK(sharp < bound);
  }

  SUBCASE("chain exact <= sharp <= envelope over a lambda grid") {
    for (int k : {0, 1, 2, 4}) {
      for (double l : {2.0, 5.0, 10.0, 40.0, 160.0}) {
        const Complex lam(l, 0.0);
        const double exact = std::abs(ik_tail_exact(cert, k, lam));
        const double sharp = incomplete_tail_sharp(cert, k, lam);
        const double bound = incomplete_tail_bound(cert, k, lam, 0.5);
        CHECK(exact <= sharp * (1.0 + 1e-12));
        CHECK(sharp <= bound * (1.0 + 1e-12));
      }
    }
  }

  SUBCASE("delta edge") {
    CHECK(incomplete_tail_bound(cert, 1, lambda, 0.999) >
          incomplete_tail_bound(cert, 1, lambda, 0.99));
    CHECK_THROWS_AS(incomplete_tail_bound(cert, 1, lambda, 1.0),
                    DeltaOutOfRange);
  }
}

TEST_CASE("taylor remainder envelope") {
  SUBCASE("direct formula") {
    BoundCertificate cert = toy_certificate();
    cert.epsilon = kPi / 2.0 - 0.01;
    cert.sector = SectorRegion::from_arg_range(0.0, 0.0, cert.epsilon);
    const double v = taylor_remainder_bound(cert, 0, Complex(10.0, 0.0));
    const double s = std::sin(cert.epsilon);
    CHECK(v == doctest::Approx(1.0 / (100.0 * s * s)).epsilon(1e-12));
    CHECK(v == doctest::Approx(1.0002e-2).epsilon(1e-3));
  }

  SUBCASE("power-law decay under lambda doubling") {
    const BoundCertificate cert = toy_certificate();
    const int N = 2;  // C_N available for N <= 2
    const double r = taylor_remainder_bound(cert, N, Complex(10.0, 0.0)) /
                     taylor_remainder_bound(cert, N, Complex(20.0, 0.0));
    CHECK(r == doctest::Approx(std::pow(2.0, N + 2)).epsilon(1e-12));
  }
}

TEST_CASE("taylor remainder constants from circle sampling") {
  // |r_N(u)|/|u|^{N+1} for the geometric-type pole at -1 peaks at u = -0.9
  // with value 1/(1 - 0.9) = 10; the inflated constant is 10.5.
  const AnalyticFunction f = inv_one_plus_u();
  for (int n = 0; n <= 4; ++n) {
    const double cn = taylor_remainder_constant(f, n, 0.9);
    CHECK(cn == doctest::Approx(10.5).epsilon(1e-9));
  }
}

TEST_CASE("certificates on the ray") {
  const Contour ray = unit_ray();
  const std::vector<Complex> grid = {Complex(10.0, 0.0), Complex(40.0, 0.0)};
  const CertificateReport rep =
      certify(ray, AnalyticFunction::one(), 0.1, 2, grid);
  CHECK(rep.validity.valid);
  CHECK(rep.pass);
  for (const auto& row : rep.identity_rows) CHECK(row.residual_rel < 1e-9);
}

TEST_CASE("certificates on the worked example") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  std::vector<Complex> grid;
  for (double l = 20.0; l <= 160.0; l *= 2.0) grid.push_back(Complex(l, 0.0));
  ToleranceSpec tol;
  tol.atol = 1e-13;
  const CertificateReport rep = certify(fig1, f, 0.1, 4, grid, tol);
  CHECK(rep.validity.valid);
  CHECK(rep.pass);

  SUBCASE("every measured piece sits under its envelope") {
    for (const auto& row : rep.tail_rows) CHECK(row.measured <= row.envelope);
    for (const auto& row : rep.ik_rows) CHECK(row.measured <= row.envelope);
    for (const auto& row : rep.taylor_rows)
      CHECK(row.measured <= row.envelope);
  }

  SUBCASE("undersized C_N is flagged (negative control)") {
    BoundCertificate tampered =
        make_certificate(fig1, f, rep.validity, 4);
    for (double& cn : tampered.C_N) cn *= 1e-6;
    const CertificateReport bad =
        evaluate_certificate(tampered, fig1, f, 4, grid, tol);
    CHECK(!bad.pass);
    bool taylor_violation = false;
    for (const auto& row : bad.taylor_rows)
      if (!row.ok) taylor_violation = true;
    CHECK(taylor_violation);
  }
}

TEST_CASE("envelopes decrease along rays in the sector") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  const ValidityReport validity = validate_lemma3(fig1, f, 0.1);
  REQUIRE(validity.valid);
  const BoundCertificate cert = make_certificate(fig1, f, validity, 3);
  double prev_tail = 1e300, prev_ik = 1e300, prev_taylor = 1e300;
  for (double l = 20.0; l <= 320.0; l *= 2.0) {
    const Complex lam(l, 0.0);
    const double t = tail_envelope(cert, lam);
    const double i = incomplete_tail_bound(cert, 2, lam, 0.5);
    const double ty = taylor_remainder_bound(cert, 3, lam);
    CHECK(t < prev_tail);
    CHECK(i < prev_ik);
    CHECK(ty < prev_taylor);
    prev_tail = t;
    prev_ik = i;
    prev_taylor = ty;
  }
}
