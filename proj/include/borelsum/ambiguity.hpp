#pragma once

#include <span>
#include <string>
#include <vector>

#include "borelsum/analytic_function.hpp"
#include "borelsum/contour.hpp"
#include "borelsum/quadrature.hpp"
#include "borelsum/series.hpp"

namespace borelsum {

// Sentinel rate for contour pairs whose difference sits at quadrature noise.
inline constexpr double kIndistinguishableRate = 1e308;

struct AmbiguityReport {
  std::string contour_a = "a";
  std::string contour_b = "b";
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<Complex> lambda_grid;
  std::vector<Complex> delta;  // Phi_a - Phi_b pointwise
  double fit_logC = 0.0;
  double fit_rate = 0.0;  // log|Delta| ~ logC - rate |lambda|
  double fit_rms = 0.0;   // RMS residual of the fit in log space
  bool noise_floor = false;
  int shared_coeffs_checked = 0;
};

// Pointwise difference of the two resummations, an exponential-decay fit
// over the upper half of the |lambda| range, and a count of extracted
// expansion coefficients that agree within their error bars (the two
// functions share one asymptotic series while differing beyond all
// orders).  Throws SectorMismatch when the validity sectors at the given
// epsilon do not intersect.
AmbiguityReport compare_contours(const Contour& ca, const Contour& cb,
                                 const AnalyticFunction& f, double alpha,
                                 double beta,
                                 std::span<const Complex> lambda_grid,
                                 const ToleranceSpec& tol = {},
                                 double epsilon = 0.1,
                                 std::string name_a = "a",
                                 std::string name_b = "b");

// True iff |Delta(lambda)| |lambda|^{(n+beta)/alpha} decreases monotonically
// over the top octave of the grid for every n <= N, i.e. the difference is
// smaller than every power the series can see.  Vacuously true at the
// noise floor.
bool beyond_all_orders_check(const AmbiguityReport& report,
                             const AsymptoticSeries& series, int N);

}  // namespace borelsum
