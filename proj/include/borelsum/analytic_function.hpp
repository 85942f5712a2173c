#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace borelsum {

using Complex = std::complex<double>;

enum class EvaluatorKind { Rational, Geometric, TaylorOnly };

// Model of the function f(u) entering the Laplace-Borel integral: Taylor
// coefficients f^{(k)}(0)/k! valid on the disc |u| < rho, plus a global
// evaluator.  Rational models (sum of simple poles plus a polynomial) are
// the canonical input form; the geometric model 1/(1 - u/u0) is a single
// pole; taylor-only models evaluate the truncated series and are usable
// only for |u| <= 0.9 rho.
class AnalyticFunction {
 public:
  static constexpr int kDefaultKMax = 64;

  // f(u) = sum_j residues[j] / (u - poles[j]) + sum_m polynomial[m] u^m
  static AnalyticFunction rational(std::vector<Complex> poles,
                                   std::vector<Complex> residues,
                                   std::vector<Complex> polynomial = {},
                                   int k_max = kDefaultKMax);

  // f(u) = 1 / (1 - u/u0)
  static AnalyticFunction geometric(Complex u0, int k_max = kDefaultKMax);

  // f(u) = sum_k coeffs[k] u^k, declared holomorphic on |u| < rho.
  static AnalyticFunction taylor_only(std::vector<Complex> coeffs, double rho);

  static AnalyticFunction constant(Complex value);
  static AnalyticFunction one() { return constant(1.0); }

  // Global evaluator.  Throws EvaluatorDomain for taylor-only models
  // evaluated outside |u| <= 0.9 rho.
  Complex operator()(Complex u) const;

  // f^{(k)}(0) / k!, k = 0 .. k_max.
  const std::vector<Complex>& taylor() const { return taylor_; }

  double rho() const { return rho_; }
  EvaluatorKind kind() const { return kind_; }
  const std::vector<Complex>& poles() const { return poles_; }
  const std::vector<Complex>& residues() const { return residues_; }
  const std::vector<Complex>& polynomial() const { return polynomial_; }

  // Distance from u to the nearest pole; +inf for pole-free models.
  double pole_distance(Complex u) const;

  // f(u) - sum_{k<=N} taylor_k u^k.
  Complex taylor_remainder(Complex u, int N) const;

 private:
  AnalyticFunction() = default;
  void check_consistency() const;

  EvaluatorKind kind_ = EvaluatorKind::Rational;
  std::vector<Complex> poles_;
  std::vector<Complex> residues_;
  std::vector<Complex> polynomial_;
  std::vector<Complex> taylor_;
  double rho_ = std::numeric_limits<double>::infinity();
};

}  // namespace borelsum
