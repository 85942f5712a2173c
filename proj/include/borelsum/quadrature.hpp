#pragma once

#include <span>
#include <string>
#include <vector>

#include "borelsum/analytic_function.hpp"
#include "borelsum/contour.hpp"

namespace borelsum {

struct ToleranceSpec {
  double atol = 1e-12;
  double rtol = 1e-10;
  long long max_evals = 10'000'000;
};

// f(G(s)) e^{-lambda G^alpha} G^{beta-1} G'(s) along a contour.  The
// powers G^alpha and G^{beta-1} are taken as |G|^p e^{i p arg~(G)} with
// the contour's unwrapped argument, so they stay continuous on curves
// whose principal argument wraps.
struct LaplaceIntegrand {
  const Contour& contour;
  const AnalyticFunction& f;
  double alpha = 1.0;
  double beta = 1.0;
  Complex lambda{0.0};

  Complex operator()(double s) const;
};

struct QuadResult {
  Complex value{0.0};
  double abs_error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = false;
  // Set when arg(lambda) falls outside the contour's damping sector
  // (epsilon -> 0 limit); evaluation proceeds regardless.
  bool sector_warning = false;
  // Error code when a scan entry failed outright (lambda_scan only).
  std::string error_code;
};

// Phi_{a,b}(lambda) = int_a^b f(G(s)) e^{-lambda G^alpha} G^{beta-1} G'(s) ds
// by adaptive Gauss-Kronrod 15(7), bisecting the worst panel first.  Powers
// of G use the contour's unwrapped argument.  For beta < 1 the subinterval
// touching s = 0 is mapped by s = w^{1/beta}, which removes the endpoint
// singularity exactly.  Throws NoConvergence when the evaluation budget is
// exhausted and PoleOnContour when f is singular within 1e-9 of the path.
QuadResult integrate(const Contour& contour, const AnalyticFunction& f,
                     Complex lambda, double alpha, double beta, double a,
                     double b, const ToleranceSpec& tol = {});

// Elementwise integrate; per-lambda failures are recorded in the result
// (converged = false, error_code set) without aborting the scan.  jobs > 1
// evaluates entries in parallel; results are returned in grid order.
std::vector<QuadResult> lambda_scan(const Contour& contour,
                                    const AnalyticFunction& f, double alpha,
                                    double beta,
                                    std::span<const Complex> lambdas,
                                    const ToleranceSpec& tol = {},
                                    int jobs = 1);

}  // namespace borelsum
