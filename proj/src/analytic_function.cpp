#include "borelsum/analytic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Complex horner(const std::vector<Complex>& c, Complex u) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}
}  // namespace

AnalyticFunction AnalyticFunction::rational(std::vector<Complex> poles,
                                            std::vector<Complex> residues,
                                            std::vector<Complex> polynomial,
                                            int k_max) {
  if (poles.size() != residues.size())
    throw ConfigParse("rational model: poles and residues must pair up");
  AnalyticFunction f;
  f.kind_ = EvaluatorKind::Rational;
  f.poles_ = std::move(poles);
  f.residues_ = std::move(residues);
  f.polynomial_ = std::move(polynomial);

  f.rho_ = kInf;
  for (const Complex& p : f.poles_) {
    if (std::abs(p) == 0.0)
      throw ConfigParse("rational model: pole at the origin is not allowed");
    f.rho_ = std::min(f.rho_, std::abs(p));
  }

  // Taylor data: r/(u - p) = -(r/p) sum_k (u/p)^k, plus the polynomial part.
  f.taylor_.assign(static_cast<std::size_t>(k_max) + 1, Complex(0.0));
  for (std::size_t j = 0; j < f.poles_.size(); ++j) {
    const Complex p = f.poles_[j];
    const Complex r = f.residues_[j];
    Complex pk = p;  // p^{k+1}
    for (int k = 0; k <= k_max; ++k) {
      f.taylor_[static_cast<std::size_t>(k)] -= r / pk;
      pk *= p;
    }
  }
  for (std::size_t m = 0; m < f.polynomial_.size() &&
                          m < f.taylor_.size(); ++m)
    f.taylor_[m] += f.polynomial_[m];

  f.check_consistency();
  return f;
}

AnalyticFunction AnalyticFunction::geometric(Complex u0, int k_max) {
  if (std::abs(u0) == 0.0)
    throw ConfigParse("geometric model: u0 must be nonzero");
  AnalyticFunction f;
  f.kind_ = EvaluatorKind::Geometric;
  f.poles_ = {u0};
  f.residues_ = {-u0};  // 1/(1 - u/u0) = -u0 / (u - u0)
  f.rho_ = std::abs(u0);
  f.taylor_.assign(static_cast<std::size_t>(k_max) + 1, Complex(0.0));
  Complex c = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    f.taylor_[static_cast<std::size_t>(k)] = c;
    c /= u0;
  }
  f.check_consistency();
  return f;
}

AnalyticFunction AnalyticFunction::taylor_only(std::vector<Complex> coeffs,
                                               double rho) {
  if (coeffs.empty()) throw ConfigParse("taylor model: empty coefficient list");
  if (!(rho > 0.0)) throw ConfigParse("taylor model: rho must be positive");
  AnalyticFunction f;
  f.kind_ = EvaluatorKind::TaylorOnly;
  f.taylor_ = std::move(coeffs);
  f.rho_ = rho;
  return f;
}

AnalyticFunction AnalyticFunction::constant(Complex value) {
  return rational({}, {}, {value});
}

Complex AnalyticFunction::operator()(Complex u) const {
  switch (kind_) {
    case EvaluatorKind::Rational:
    case EvaluatorKind::Geometric: {
      Complex v = horner(polynomial_, u);
      for (std::size_t j = 0; j < poles_.size(); ++j)
        v += residues_[j] / (u - poles_[j]);
      return v;
    }
    case EvaluatorKind::TaylorOnly: {
      if (std::abs(u) > 0.9 * rho_ * (1.0 + 1e-12))
        throw EvaluatorDomain(
            "taylor-only evaluator queried outside |u| <= 0.9 rho");
      return horner(taylor_, u);
    }
  }
  return 0.0;  // unreachable
}

double AnalyticFunction::pole_distance(Complex u) const {
  double d = kInf;
  for (const Complex& p : poles_) d = std::min(d, std::abs(u - p));
  return d;
}

Complex AnalyticFunction::taylor_remainder(Complex u, int N) const {
  Complex partial = 0.0;
  Complex uk = 1.0;
  const int kmax = std::min<int>(N, static_cast<int>(taylor_.size()) - 1);
  for (int k = 0; k <= kmax; ++k) {
    partial += taylor_[static_cast<std::size_t>(k)] * uk;
    uk *= u;
  }
  return (*this)(u)-partial;
}

void AnalyticFunction::check_consistency() const {
  // Evaluator and Taylor data must agree on |u| = rho/2 (or |u| = 1 for
  // entire models): 16 samples, 1e-8 absolute.
  const double r = std::isfinite(rho_) ? 0.5 * rho_ : 1.0;
  for (int i = 0; i < 16; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / 16.0;
    const Complex u = std::polar(r, phi);
    Complex series = horner(taylor_, u);
    const Complex direct = (*this)(u);
    if (std::abs(direct - series) > 1e-8)
      throw EvaluatorMismatch(
          "evaluator disagrees with Taylor data on |u| = rho/2");
  }
}

}  // namespace borelsum
