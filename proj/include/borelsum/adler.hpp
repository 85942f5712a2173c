#pragma once

#include <optional>
#include <span>
#include <vector>

#include "borelsum/analytic_function.hpp"
#include "borelsum/contour.hpp"
#include "borelsum/quadrature.hpp"
#include "borelsum/series.hpp"

namespace borelsum {

// Borel data for the resummation demo: coefficients b_n =
// D_{n+1} / (beta0^n n!) together with the global model of B(u), when
// available (rational with poles on u >= 2 and u <= -1 in the canonical
// renormalon/instanton pattern).
struct BorelModel {
  std::vector<double> b;
  double beta0 = 1.0;
  std::optional<AnalyticFunction> function;
  // Original perturbative coefficients when the model was built by
  // borel_transform; lets the inverse map return them bit-exactly (the
  // divide-then-multiply round trip is not exact in IEEE arithmetic).
  std::optional<std::vector<double>> source_D;

  double rho() const;  // min pole distance; +inf without a model
};

// b_n = D_{n+1} / (beta0^n n!), D given as [D_1, D_2, ...].
BorelModel borel_transform(std::span<const double> D, double beta0);

// Inverse map D_{n+1} = b_n beta0^n n!; exact when the model carries its
// source coefficients.
std::vector<double> perturbative_coefficients(const BorelModel& model);

// alpha_s(s)/pi at the evaluation scale.
struct CouplingPoint {
  Complex a{0.0};
};

// (1/beta0) * Phi over the contour at lambda = 1/(beta0 a), alpha=beta=1.
Complex resum(const BorelModel& model, const Contour& contour, CouplingPoint a,
              const ToleranceSpec& tol = {});

struct PvResult {
  Complex pv{0.0};
  Complex upper{0.0};
  Complex lower{0.0};
  double lip_gap_abs = 0.0;  // |upper - lower| / 2 (half-residue jump)
};

// Principal Value along [0, c] with simple poles on the positive axis:
// average of the two rays rotated by +/-theta, theta -> 0 by Richardson
// extrapolation over theta in {1e-2, 5e-3, 2.5e-3}.
PvResult pv_resum(const BorelModel& model, double c, CouplingPoint a,
                  const ToleranceSpec& tol = {});

struct SacFit {
  double A_hat = 0.0;
  double sigma_hat = 0.0;
  double rms = 0.0;
  bool ok = false;
};

// Fits log(max_lambda |R_N| |lambda|^N / N!) ~ log A + N log sigma over the
// supplied remainder reports; ok when the RMS residual is below 0.3 (the
// N! sigma^N profile of the strong asymptotic conditions).
SacFit sac_fit(std::span<const RemainderReport> reports);

struct CarlemanResult {
  std::vector<double> partial_sums;  // sum_{n<=M} b_n^{-1/n}, n from 1
  double tail_slope = 0.0;           // d(partial sum)/d(log n), last decade
  bool divergent = false;
};

// Diagnostic partial sums of sum b_n^{-1/n}; bounds given as values
// (b[0] = b_1, all positive).
CarlemanResult carleman_partial_sums(std::span<const double> b, int M);

// Same, with log(b_n) supplied so factorial-scale bounds stay representable.
CarlemanResult carleman_partial_sums_log(std::span<const double> log_b, int M);

// Demo Borel function 3/(1+u) + 1/(1-u/2) + (0.2 + 0.1 u): simple poles at
// u = -1 and u = 2, rho = 1.
BorelModel canonical_demo_model(double beta0);

}  // namespace borelsum
