#pragma once

#include <span>
#include <vector>

#include "borelsum/analytic_function.hpp"
#include "borelsum/contour.hpp"
#include "borelsum/quadrature.hpp"

namespace borelsum {

// One coefficient c_k = Gamma((k+beta)/alpha) * taylor_k / alpha of the
// large-lambda expansion in powers lambda^{-(k+beta)/alpha}.  Entries whose
// Gamma argument exceeds 170 overflow double and are kept as log-magnitude
// plus phase with the flag set.
struct GammaCoefficient {
  Complex value{0.0};
  double log_abs = 0.0;  // natural log of |c_k|
  double phase = 0.0;
  bool overflowed = false;
};

struct AsymptoticSeries {
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<GammaCoefficient> coeffs;
  int n_max = 0;

  // c_k lambda^{-(k+beta)/alpha}, computed in the log domain when the
  // coefficient overflowed.
  Complex term(int k, Complex lambda) const;
  // sum_{k<=N} term(k, lambda)
  Complex partial_sum(int N, Complex lambda) const;
};

AsymptoticSeries asymptotic_coefficients(const AnalyticFunction& f,
                                         double alpha, double beta, int N);

struct ExtractedCoefficient {
  Complex value{0.0};
  double error_bar = 0.0;
};

// Coefficient recovery from samples of Phi(lambda) on a geometric ladder
// (|lambda_{j+1}| / |lambda_j| = q >= 2, fixed arg, at least n_max + 4
// points).  With y = Phi lambda^{beta/alpha} and x = lambda^{-1/alpha} the
// expansion is the polynomial y = sum F_k x^k, so the coefficients come
// from Newton divided-difference interpolation through the rungs; error
// bars combine a truncation probe (dropping the lowest rung) with noise
// propagation through the interpolation weights.  Samples are assumed
// accurate to ~1e-16 relative unless per-sample absolute noise levels are
// supplied.  Extraction stops at the first coefficient whose bar exceeds
// 10% of its value (with an absolute floor so genuinely vanishing
// coefficients do not halt it).
std::vector<ExtractedCoefficient> extract_coefficients(
    std::span<const Complex> lambdas, std::span<const Complex> phis,
    double alpha, double beta, int n_max,
    std::span<const double> phi_noise = {});

struct RemainderReport {
  int N = 0;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<Complex> lambda_samples;
  std::vector<Complex> remainders;  // R_N = Phi - partial sum
  std::vector<double> scaled;       // |R_N| |lambda|^{(N+1+beta)/alpha}
  double slope_fit = 0.0;           // d log|R_N| / d log|lambda|
  bool passes = false;
};

// Measures R_N(lambda) over the grid via quadrature and tests decay:
// passes iff the log-log slope <= -(N+beta)/alpha - 1/alpha + 0.1.
RemainderReport remainder_scan(const Contour& contour,
                               const AnalyticFunction& f, double alpha,
                               double beta, int N,
                               std::span<const Complex> lambda_grid,
                               const ToleranceSpec& tol = {});

}  // namespace borelsum
