#pragma once

#include <complex>

namespace borelsum {

using Complex = std::complex<double>;

// Upper incomplete gamma function Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt
// for a > 0, x >= 0.  Series expansion for x < a + 1, Lentz continued
// fraction otherwise.
double upper_incomplete_gamma(double a, double x);

// Regularized complement Q(a, x) = Gamma(a, x) / Gamma(a) in [0, 1].
double regularized_gamma_q(double a, double x);

// Gamma(k+1, z) for integer k >= 0 and complex z, via the closed form
// k! e^{-z} sum_{m<=k} z^m / m!.
Complex upper_incomplete_gamma_int(int k, Complex z);

}  // namespace borelsum
