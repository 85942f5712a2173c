#include <doctest.h>

#include <cmath>

#include "borelsum/special_functions.hpp"

using namespace borelsum;

TEST_CASE("upper incomplete gamma, integer order closed forms") {
  // Gamma(1, x) = e^{-x}
  for (double x : {0.1, 0.5, 1.0, 5.0, 20.0}) {
    CHECK(upper_incomplete_gamma(1.0, x) ==
          doctest::Approx(std::exp(-x)).epsilon(1e-13));
  }
  CHECK(upper_incomplete_gamma(1.0, 5.0) ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-13));

  // Gamma(k+1, x) = k! e^{-x} sum_{m<=k} x^m/m!
  for (int k = 0; k <= 6; ++k) {
    for (double x : {0.25, 1.0, 3.0, 8.0, 30.0}) {
      double sum = 1.0, term = 1.0;
      for (int m = 1; m <= k; ++m) {
        term *= x / m;
        sum += term;
      }
      const double expected = std::tgamma(k + 1.0) * std::exp(-x) * sum;
      CHECK(upper_incomplete_gamma(k + 1.0, x) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("regularized Q limits and monotonicity") {
  CHECK(regularized_gamma_q(2.5, 0.0) == 1.0);
  double prev = 1.0;
  for (double x = 0.5; x < 30.0; x += 0.5) {
    const double q = regularized_gamma_q(2.5, x);
    CHECK(q <= prev + 1e-15);
    CHECK(q >= 0.0);
    prev = q;
  }
}

TEST_CASE("complex incomplete gamma agrees with the real one on the axis") {
  for (int k = 0; k <= 5; ++k) {
    for (double x : {0.5, 2.0, 10.0}) {
      const Complex z(x, 0.0);
      const Complex got = upper_incomplete_gamma_int(k, z);
      CHECK(got.real() ==
            doctest::Approx(upper_incomplete_gamma(k + 1.0, x)).epsilon(1e-12));
      CHECK(std::abs(got.imag()) < 1e-15 * std::abs(got.real()) + 1e-300);
    }
  }
}

TEST_CASE("complex incomplete gamma: derivative identity") {
  // d/dz Gamma(k+1, z) = -z^k e^{-z}, checked by central differences.
  const Complex z(1.3, 0.7);
  const double h = 1e-5;
  for (int k = 1; k <= 4; ++k) {
    const Complex num =
        (upper_incomplete_gamma_int(k, z + h) -
         upper_incomplete_gamma_int(k, z - h)) /
        (2.0 * h);
    const Complex expected = -std::pow(z, k) * std::exp(-z);
    CHECK(std::abs(num - expected) < 1e-7);
  }
}
