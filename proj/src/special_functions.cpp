#include "borelsum/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace borelsum {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 500;

// Regularized lower incomplete gamma P(a, x) by its power series,
// good for x < a + 1.
double gamma_p_series(double a, double x) {
  if (x <= 0.0) return 0.0;
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by the Lentz continued
// fraction, good for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double upper_incomplete_gamma(double a, double x) {
  return regularized_gamma_q(a, x) * std::tgamma(a);
}

Complex upper_incomplete_gamma_int(int k, Complex z) {
  if (k < 0) throw std::domain_error("upper_incomplete_gamma_int: k >= 0");
  // k! e^{-z} sum_{m<=k} z^m / m!
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int m = 1; m <= k; ++m) {
    term *= z / static_cast<double>(m);
    sum += term;
  }
  return std::tgamma(static_cast<double>(k) + 1.0) * std::exp(-z) * sum;
}

}  // namespace borelsum
