#include <doctest.h>

#include <cmath>
#include <numbers>

#include "borelsum/contour.hpp"
#include "borelsum/errors.hpp"
#include "oracles.hpp"

using namespace borelsum;

namespace {
Contour unit_ray() {
  std::vector<Segment> segs;
  segs.push_back(make_ray(0.0, 1.0));
  return Contour(std::move(segs));
}
}  // namespace

TEST_CASE("identity ray") {
  const Contour ray = unit_ray();
  CHECK(ray.length() == 1.0);
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(ray.point(s).real() == doctest::Approx(s).epsilon(1e-15));
    CHECK(ray.point(s).imag() == 0.0);
  }
  CHECK(ray.derivative(0.7) == Complex(1.0, 0.0));
}

TEST_CASE("worked-example contour: construction and radius profile") {
  const double a1 = 0.1, b1 = 0.1;
  CHECK(fig1_a2(a1, b1) == doctest::Approx(-0.08).epsilon(1e-15));
  CHECK(fig1_b2(a1, b1) == doctest::Approx(-0.04).epsilon(1e-15));

  const Contour fig1 = fig1_contour(a1, b1);
  CHECK(fig1.length() == doctest::Approx(1.2));
  CHECK(fig1.num_segments() == 2);

  // Joint continuity at s = 1.
  const Complex left = fig1.segment(0).end_point();
  const Complex right = fig1.segment(1).start_point();
  CHECK(std::abs(left - right) < 1e-12);

  // d|G|/ds along the polynomial piece: positive strictly inside, zero at
  // the far end.
  auto radius_rate = [&](double s) {
    const Complex g = fig1.segment(0).value(s);
    const Complex dg = fig1.segment(0).derivative(s);
    return (g.real() * dg.real() + g.imag() * dg.imag()) / std::abs(g);
  };
  for (int i = 0; i <= 98; ++i) {
    const double s = 0.01 + i * 0.01;
    CHECK(radius_rate(s) > 0.0);
  }
  CHECK(std::abs(radius_rate(1.0)) < 1e-6);

  // The arc has constant radius.
  for (double s : {1.0, 1.05, 1.1, 1.15, 1.2}) {
    const Complex g = fig1.segment(1).value(s);
    const Complex dg = fig1.segment(1).derivative(s);
    const double rate =
        (g.real() * dg.real() + g.imag() * dg.imag()) / std::abs(g);
    CHECK(std::abs(rate) < 1e-9);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Contour({}), EmptySpec);

  // Gap between segments.
  {
    std::vector<Segment> segs;
    segs.push_back(make_ray(0.0, 1.0));
    segs.push_back(make_ray(0.0, 1.0, Complex(2.0, 0.0), 1.0));
    CHECK_THROWS_AS(Contour(std::move(segs)), JointDiscontinuity);
  }

  // Path returning through the origin.
  {
    std::vector<Segment> segs;
    segs.push_back(make_ray(0.0, 1.0));
    segs.push_back(make_ray(std::numbers::pi, 2.0, Complex(1.0, 0.0), 1.0));
    CHECK_THROWS_AS(Contour(std::move(segs)), OriginRevisit);
  }

  // First segment away from the origin.
  {
    std::vector<Segment> segs;
    segs.push_back(make_ray(0.0, 1.0, Complex(0.5, 0.0)));
    CHECK_THROWS_AS(Contour(std::move(segs)), EmptySpec);
  }
}

TEST_CASE("argument profile") {
  SUBCASE("ray has constant zero argument") {
    const ArgProfile p = unit_ray().arg_profile(0.1);
    CHECK(p.A == 0.0);
    CHECK(p.B == 0.0);
    CHECK(p.winding_excess == 0.0);
  }

  SUBCASE("worked example vs dense independent sampling") {
    const Contour fig1 = fig1_contour(0.1, 0.1);
    const ArgProfile p = fig1.arg_profile(0.05);
    const oracles::ArgRange expected = oracles::fig1_arg_range(0.1, 0.1, 0.05);
    CHECK(p.A == doctest::Approx(expected.A).epsilon(1e-6));
    CHECK(p.B == doctest::Approx(expected.B).epsilon(1e-6));
    CHECK(p.A > 0.0);
    CHECK(p.B < std::numbers::pi / 2.0);
    CHECK(p.B - p.A < std::numbers::pi / 2.0);
  }

  SUBCASE("full circle winds by 2 pi") {
    std::vector<Segment> segs;
    segs.push_back(make_ray(0.0, 1.0));
    segs.push_back(make_arc(Complex(1.0, 0.0), 1.0, 1.0 + 2.0 * std::numbers::pi));
    const Contour loop(std::move(segs));
    const ArgProfile p = loop.arg_profile(0.5);
    CHECK(p.winding_excess >= 2.0 * std::numbers::pi - 1e-9);
    CHECK(p.B - p.A >= 2.0 * std::numbers::pi - 1e-9);
  }

  SUBCASE("untrackable winding is reported") {
    // An arc spinning ~1e7 rad per unit parameter outruns the refinement
    // budget; the profile must refuse rather than alias the turns.
    std::vector<Segment> segs;
    segs.push_back(make_ray(0.0, 1.0));
    segs.push_back(make_arc(Complex(1.0, 0.0), 1.0, 1.5, 1e7));
    const Contour spin(std::move(segs));
    CHECK(!spin.winding_ok());
    CHECK_THROWS_AS(spin.arg_profile(0.5), WindingFailure);
  }
}

TEST_CASE("argument continuity along the curve") {
  const Contour fig1 = fig1_contour(0.1, 0.1);
  double prev = fig1.unwrapped_arg(1e-6);
  for (int i = 1; i <= 2000; ++i) {
    const double s = 1.2 * i / 2000.0;
    const double cur = fig1.unwrapped_arg(s);
    CHECK(std::abs(cur - prev) < 0.05);
    prev = cur;
  }
}

TEST_CASE("straighten") {
  SUBCASE("a ray is a fixed point") {
    const Contour ray = unit_ray();
    const Contour st = ray.straightened(0.5);
    for (double s : {0.1, 0.3, 0.5, 0.7, 1.0})
      CHECK(std::abs(st.point(s) - ray.point(s)) < 1e-15);
  }

  SUBCASE("worked example: linear radius head, untouched tail") {
    const Contour fig1 = fig1_contour(0.1, 0.1);
    const double s1 = 0.5;
    const Contour st = fig1.straightened(s1, 1.0);

    CHECK(st.point(s1) == fig1.point(s1));      // cut point exact
    CHECK(st.point(1.2) == fig1.point(1.2));    // far endpoint exact
    const double r1 = std::abs(fig1.point(s1));
    for (double s : {0.1, 0.2, 0.35, 0.49}) {
      CHECK(std::abs(st.point(s)) ==
            doctest::Approx(s / s1 * r1).epsilon(1e-12));
    }
    for (double s : {0.6, 0.9, 1.1})
      CHECK(std::abs(st.point(s) - fig1.point(s)) < 1e-15);
  }

  SUBCASE("cutoff out of range") {
    const Contour fig1 = fig1_contour(0.1, 0.1);
    CHECK_THROWS_AS(fig1.straightened(1.5, 1.0), CutoffOutOfRange);
    CHECK_THROWS_AS(fig1.straightened(0.5, 0.05), CutoffOutOfRange);
    CHECK_THROWS_AS(fig1.straightened(0.0, 1.0), CutoffOutOfRange);
  }
}

TEST_CASE("polyline segments") {
  std::vector<Complex> pts = {Complex(0.0, 0.0), Complex(1.0, 0.0),
                              Complex(1.0, 1.0)};
  std::vector<Segment> segs;
  segs.push_back(make_polyline(pts));
  const Contour c(std::move(segs));
  CHECK(c.length() == doctest::Approx(2.0));
  CHECK(std::abs(c.point(0.5) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(c.point(1.5) - Complex(1.0, 0.5)) < 1e-15);
  CHECK(std::abs(c.derivative(1.5) - Complex(0.0, 1.0)) < 1e-15);

  // Restriction keeps surviving edges bit-exact.
  const Contour st = c.straightened(0.25);
  CHECK(st.point(1.5) == c.point(1.5));
}
