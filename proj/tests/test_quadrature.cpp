#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "borelsum/contour.hpp"
#include "borelsum/errors.hpp"
#include "borelsum/quadrature.hpp"
#include "oracles.hpp"

using namespace borelsum;

namespace {

Contour unit_ray(double length = 1.0) {
  std::vector<Segment> segs;
  segs.push_back(make_ray(0.0, length));
  return Contour(std::move(segs));
}

AnalyticFunction inv_one_plus_u() {
  return AnalyticFunction::rational({Complex(-1.0, 0.0)}, {Complex(1.0, 0.0)});
}

}  // namespace

TEST_CASE("closed forms on the ray") {
  const Contour ray = unit_ray();
  const AnalyticFunction one = AnalyticFunction::one();

  SUBCASE("exponential integral") {
    const QuadResult r = integrate(ray, one, 10.0, 1.0, 1.0, 0.0, 1.0);
    CHECK(r.converged);
    const double expected = (1.0 - std::exp(-10.0)) / 10.0;
    CHECK(std::abs(r.value - expected) < 1e-12);
  }

  SUBCASE("beta = 1/2 endpoint singularity") {
    const QuadResult r = integrate(ray, one, 1.0, 1.0, 0.5, 0.0, 1.0);
    CHECK(r.converged);
    const double expected = std::sqrt(std::numbers::pi) * oracles::erf_series(1.0);
    CHECK(std::abs(r.value - expected) < 1e-10);
  }

  SUBCASE("scan matches the closed form pointwise") {
    const std::vector<Complex> lambdas = {5.0, 10.0, 20.0};
    const auto results = lambda_scan(ray, one, 1.0, 1.0, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double l = lambdas[i].real();
      CHECK(std::abs(results[i].value - (1.0 - std::exp(-l)) / l) < 1e-12);
      CHECK(results[i].converged);
    }
  }

  SUBCASE("empty scan") {
    CHECK(lambda_scan(ray, one, 1.0, 1.0, {}).empty());
  }
}

TEST_CASE("curved contour vs fixed-order composite oracle") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  const Complex lambda(30.0, 0.0);

  const QuadResult r = integrate(fig1, f, lambda, 1.0, 1.0, 0.0, 1.2);
  CHECK(r.converged);

  // Independent evaluation straight from the parametric formulas.
  const double a1 = 0.1, b1 = 0.1;
  const double a2 = fig1_a2(a1, b1), b2 = fig1_b2(a1, b1);
  auto poly_piece = [&](double s) {
    const Complex g(a1 * s + a2 * s * s, b1 * s + b2 * s * s);
    const Complex dg(a1 + 2 * a2 * s, b1 + 2 * b2 * s);
    return std::exp(-lambda * g) / (1.0 + g) * dg;
  };
  const Complex joint(a1 + a2, b1 + b2);
  auto arc_piece = [&](double s) {
    const Complex g = joint * std::exp(Complex(0.0, s - 1.0));
    const Complex dg = Complex(0.0, 1.0) * g;
    return std::exp(-lambda * g) / (1.0 + g) * dg;
  };
  const Complex coarse = oracles::composite_gk15(poly_piece, 0.0, 1.0, 64) +
                         oracles::composite_gk15(arc_piece, 1.0, 1.2, 16);
  const Complex fine = oracles::composite_gk15(poly_piece, 0.0, 1.0, 256) +
                       oracles::composite_gk15(arc_piece, 1.0, 1.2, 64);
  CHECK(std::abs(coarse - fine) < 1e-12 * std::abs(fine));  // oracle resolved
  CHECK(std::abs(r.value - fine) < 1e-10 * std::abs(fine));
}

TEST_CASE("general exponents on a curved contour") {
  // The worked-example contour stays in the first quadrant, so the
  // principal powers are already the continuous branch and an oracle can
  // use std::pow directly.
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  const double alpha = 2.0, beta = 0.7;
  const Complex lambda(30.0, 0.0);

  const QuadResult r = integrate(fig1, f, lambda, alpha, beta, 0.0, 1.2);
  CHECK(r.converged);

  const double a1 = 0.1, b1 = 0.1;
  const double a2 = fig1_a2(a1, b1), b2 = fig1_b2(a1, b1);
  auto integrand = [&](double s) -> Complex {
    Complex g, dg;
    if (s <= 1.0) {
      g = Complex(a1 * s + a2 * s * s, b1 * s + b2 * s * s);
      dg = Complex(a1 + 2 * a2 * s, b1 + 2 * b2 * s);
    } else {
      g = Complex(a1 + a2, b1 + b2) * std::exp(Complex(0.0, s - 1.0));
      dg = Complex(0.0, 1.0) * g;
    }
    return std::exp(-lambda * std::pow(g, alpha)) * std::pow(g, beta - 1.0) /
           (1.0 + g) * dg;
  };
  // The s^{beta-1} endpoint singularity is integrable; resolve it with a
  // graded composite sum toward s = 0.
  Complex oracle = oracles::composite_gk15(integrand, 1.0, 1.2, 512);
  double lo = 1e-9;
  oracle += oracles::composite_gk15(integrand, 0.0, lo, 64);  // ~0 mass
  while (lo < 1.0) {
    const double hi = std::min(1.0, lo * 2.0);
    oracle += oracles::composite_gk15(integrand, lo, hi, 256);
    lo = hi;
  }
  CHECK(std::abs(r.value - oracle) < 1e-9 * std::abs(oracle));
}

TEST_CASE("parameter range preconditions") {
  const Contour ray = unit_ray();
  const AnalyticFunction one = AnalyticFunction::one();
  CHECK_THROWS_AS(integrate(ray, one, 1.0, 1.0, 1.0, 0.5, 0.5), ConfigParse);
  CHECK_THROWS_AS(integrate(ray, one, 1.0, 1.0, 1.0, -0.1, 1.0), ConfigParse);
  CHECK_THROWS_AS(integrate(ray, one, 1.0, 1.0, 1.0, 0.0, 1.5), ConfigParse);
}

TEST_CASE("polyline kinks are chunk boundaries") {
  // A zig-zag path: the integrand's derivative jumps at every knot; the
  // result must still match a per-edge composite oracle tightly.
  std::vector<Complex> pts = {Complex(0.0, 0.0), Complex(0.3, 0.1),
                              Complex(0.5, 0.05), Complex(0.8, 0.2),
                              Complex(1.0, 0.1)};
  std::vector<Segment> segs;
  segs.push_back(make_polyline(pts));
  const Contour zig(std::move(segs));
  const AnalyticFunction f = inv_one_plus_u();
  const Complex lambda(12.0, 3.0);
  const QuadResult r = integrate(zig, f, lambda, 1.0, 1.0, 0.0, zig.length());
  CHECK(r.converged);

  Complex oracle = 0.0;
  for (std::size_t e = 0; e + 1 < pts.size(); ++e) {
    const Complex v = pts[e + 1] - pts[e];
    auto edge = [&](double t) {
      const Complex g = pts[e] + t * v;
      return std::exp(-lambda * g) / (1.0 + g) * v;
    };
    oracle += oracles::composite_gk15(edge, 0.0, 1.0, 256);
  }
  CHECK(std::abs(r.value - oracle) < 1e-11 * std::abs(oracle) + 1e-15);
}

TEST_CASE("additivity in the parameter") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> cut(0.1, 1.1);
  for (int i = 0; i < 5; ++i) {
    const double b = cut(rng);
    const Complex lambda = std::polar(25.0, 0.3);
    const QuadResult whole = integrate(fig1, f, lambda, 1.0, 1.0, 0.0, 1.2);
    const QuadResult head = integrate(fig1, f, lambda, 1.0, 1.0, 0.0, b);
    const QuadResult tail = integrate(fig1, f, lambda, 1.0, 1.0, b, 1.2);
    const double budget = whole.abs_error_estimate + head.abs_error_estimate +
                          tail.abs_error_estimate + 1e-15;
    CHECK(std::abs(whole.value - head.value - tail.value) < 10.0 * budget);
  }
}

TEST_CASE("conjugation symmetry") {
  SUBCASE("real contour with real function parameters") {
    const Contour ray = unit_ray();
    const AnalyticFunction f = inv_one_plus_u();
    for (const Complex lambda : {Complex(20.0, 5.0), Complex(40.0, -11.0)}) {
      const QuadResult plus = integrate(ray, f, lambda, 1.0, 1.0, 0.0, 1.0);
      const QuadResult minus =
          integrate(ray, f, std::conj(lambda), 1.0, 1.0, 0.0, 1.0);
      CHECK(std::abs(minus.value - std::conj(plus.value)) <
            10.0 * (plus.abs_error_estimate + minus.abs_error_estimate) +
                1e-14);
    }
  }

  SUBCASE("complex contour vs its mirror image") {
    // Phi^{conj G}(conj lambda) = conj(Phi^G(lambda)).
    const Contour fig1 = fig1_contour(0.1, 0.1);
    std::vector<Segment> segs;
    segs.push_back(make_poly(0.1, fig1_a2(0.1, 0.1), -0.1, -fig1_b2(0.1, 0.1),
                             0.0, 1.0));
    segs.push_back(make_arc(Complex(0.02, -0.06), 1.0, 1.2, -1.0));
    const Contour mirror(std::move(segs));

    const AnalyticFunction f = inv_one_plus_u();
    for (const Complex lambda : {Complex(20.0, 5.0), Complex(40.0, -11.0)}) {
      const QuadResult plus = integrate(fig1, f, lambda, 1.0, 1.0, 0.0, 1.2);
      const QuadResult minus =
          integrate(mirror, f, std::conj(lambda), 1.0, 1.0, 0.0, 1.2);
      CHECK(std::abs(minus.value - std::conj(plus.value)) <
            10.0 * (plus.abs_error_estimate + minus.abs_error_estimate) +
                1e-14);
    }
  }
}

TEST_CASE("deformation invariance inside the holomorphy disc") {
  // Straight chord vs curved polynomial path to the same endpoint.
  const double a1 = 0.3, a2 = -0.1, b1 = 0.2, b2 = -0.05;
  std::vector<Segment> poly_segs;
  poly_segs.push_back(make_poly(a1, a2, b1, b2, 0.0, 1.0));
  const Contour curved(std::move(poly_segs));

  const Complex endpoint(a1 + a2, b1 + b2);
  std::vector<Segment> chord_segs;
  chord_segs.push_back(Segment(RayShape{Complex(0.0), 0.0, endpoint}, 0.0, 1.0));
  const Contour chord(std::move(chord_segs));

  const AnalyticFunction f = inv_one_plus_u();  // rho = 1 covers both paths
  for (const Complex lambda : {Complex(10.0, 0.0), Complex(60.0, 10.0)}) {
    const QuadResult qa = integrate(curved, f, lambda, 1.0, 1.0, 0.0, 1.0);
    const QuadResult qb = integrate(chord, f, lambda, 1.0, 1.0, 0.0, 1.0);
    CHECK(std::abs(qa.value - qb.value) <
          10.0 * (qa.abs_error_estimate + qb.abs_error_estimate) + 1e-15);
  }
}

TEST_CASE("exponential tail decay along a ray in the sector") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  const double s1 = 1.0;
  double prev = 1e300;
  for (int j = 0; j < 4; ++j) {
    const double lambda = 20.0 * std::pow(2.0, j);
    const QuadResult r = integrate(fig1, f, lambda, 1.0, 1.0, s1, 1.2);
    const double mag = std::abs(r.value);
    CHECK(mag < prev * 1.05);
    prev = mag;
  }
}

TEST_CASE("sector warning flags out-of-cone lambda") {
  const Contour ray = unit_ray();
  const AnalyticFunction one = AnalyticFunction::one();
  const QuadResult in = integrate(ray, one, Complex(10.0, 0.0), 1.0, 1.0, 0.0, 1.0);
  CHECK(!in.sector_warning);
  const QuadResult out =
      integrate(ray, one, Complex(-4.0, 1.0), 1.0, 1.0, 0.0, 1.0);
  CHECK(out.sector_warning);
}

TEST_CASE("scan straddling the sector boundary keeps going") {
  const Contour ray = unit_ray();
  const AnalyticFunction one = AnalyticFunction::one();
  std::vector<Complex> lambdas;
  for (double phi : {0.0, 1.0, 2.2}) lambdas.push_back(std::polar(15.0, phi));
  const auto results = lambda_scan(ray, one, 1.0, 1.0, lambdas);
  CHECK(!results[0].sector_warning);
  CHECK(!results[1].sector_warning);
  CHECK(results[2].sector_warning);
  for (const auto& r : results) CHECK(r.error_code.empty());
}

TEST_CASE("failure modes") {
  SUBCASE("pole on the path") {
    const AnalyticFunction f =
        AnalyticFunction::rational({Complex(2.0, 0.0)}, {Complex(-2.0, 0.0)});
    const Contour ray = unit_ray(3.0);
    CHECK_THROWS_AS(integrate(ray, f, 1.0, 1.0, 1.0, 0.0, 3.0), PoleOnContour);
  }

  SUBCASE("budget exhaustion") {
    ToleranceSpec tol;
    tol.atol = 1e-300;
    tol.rtol = 1e-300;
    tol.max_evals = 200;
    CHECK_THROWS_AS(
        integrate(unit_ray(), inv_one_plus_u(), 35.0, 1.0, 1.0, 0.0, 1.0, tol),
        NoConvergence);
  }

  SUBCASE("scan records per-lambda failures without aborting") {
    const AnalyticFunction f =
        AnalyticFunction::rational({Complex(2.0, 0.0)}, {Complex(-2.0, 0.0)});
    const Contour ray = unit_ray(3.0);  // pole sits on the path
    const std::vector<Complex> lambdas = {Complex(5.0, 0.0)};
    const auto results = lambda_scan(ray, f, 1.0, 1.0, lambdas);
    REQUIRE(results.size() == 1);
    CHECK(!results[0].converged);
    CHECK(results[0].error_code == "quad.pole_on_contour");
  }
}

TEST_CASE("parallel scan matches serial order") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  const AnalyticFunction f = inv_one_plus_u();
  std::vector<Complex> lambdas;
  for (int i = 0; i < 8; ++i) lambdas.push_back(Complex(15.0 + 5.0 * i, 0.0));
  const auto serial = lambda_scan(fig1, f, 1.0, 1.0, lambdas, {}, 1);
  const auto parallel = lambda_scan(fig1, f, 1.0, 1.0, lambdas, {}, 4);
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    CHECK(serial[i].value == parallel[i].value);  // bitwise: same work per entry
}
