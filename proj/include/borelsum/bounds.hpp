#pragma once

#include <span>
#include <vector>

#include "borelsum/analytic_function.hpp"
#include "borelsum/contour.hpp"
#include "borelsum/quadrature.hpp"
#include "borelsum/validity.hpp"

namespace borelsum {

// Constants of the explicit remainder estimates for alpha = beta = 1
// contours: the geometry constants from the validity check, the Taylor
// remainder constants C_N with |r_N(u)| <= C_N |u|^{N+1} on the sampling
// disc, and the free parameter delta of the incomplete-tail estimate.
struct BoundCertificate {
  double K1 = 0.0;
  double K2 = 0.0;
  double eta = 0.0;
  double s1 = 0.0;
  double c = 0.0;
  double rho = 0.0;
  double epsilon = 0.0;
  double delta = 0.5;
  Complex g_s1{0.0};          // G(s1)
  std::vector<double> C_N;    // index N
  SectorRegion sector;
};

// C_N from 32 samples of |r_N(u)| / |u|^{N+1} on the circle |u| = 0.9 rho
// (max-modulus bound for the disc), inflated 5%.
double taylor_remainder_constant(const AnalyticFunction& f, int N,
                                 double sample_radius);

BoundCertificate make_certificate(const Contour& contour,
                                  const AnalyticFunction& f,
                                  const ValidityReport& report, int N_max);

// y^k <= K_{k,delta} e^{delta y}: the analytic maximizer (k/(delta e))^k.
double k_delta_constant(int k, double delta);

// K1 K2 c exp(-|lambda| eta sin eps): envelope for |Phi_{s1,c}(lambda)|.
double tail_envelope(const BoundCertificate& cert, Complex lambda);

// K_{k,delta} / (|lambda|^{k+1} sin^{k+1} eps (1-delta)) *
// exp(-(1-delta) |lambda G(s1)| sin eps): envelope for |I^k_{s1,inf}|.
double incomplete_tail_bound(const BoundCertificate& cert, int k,
                             Complex lambda, double delta);
inline double incomplete_tail_bound(const BoundCertificate& cert, int k,
                                    Complex lambda) {
  return incomplete_tail_bound(cert, k, lambda, cert.delta);
}

// Sharp version via the upper incomplete gamma:
// Gamma(k+1, |lambda G(s1)| sin eps) / (|lambda| sin eps)^{k+1}.
double incomplete_tail_sharp(const BoundCertificate& cert, int k,
                             Complex lambda);

// Exact complex I^k_{s1,inf}(lambda) = Gamma(k+1, lambda G(s1)) / lambda^{k+1}
// along the straightened ray.
Complex ik_tail_exact(const BoundCertificate& cert, int k, Complex lambda);

// C_N Gamma(N+2) / (|lambda| sin eps)^{N+2}: envelope for the remainder
// integral over the straightened initial piece.
double taylor_remainder_bound(const BoundCertificate& cert, int N,
                              Complex lambda);

struct CertificateRow {
  int index = 0;  // k or N
  Complex lambda{0.0};
  double measured = 0.0;
  double envelope = 0.0;
  bool ok = false;
};

struct IdentityRow {
  int N = 0;
  Complex lambda{0.0};
  double residual_rel = 0.0;
  bool ok = false;
};

struct CertificateReport {
  BoundCertificate cert;
  ValidityReport validity;
  std::vector<CertificateRow> tail_rows;     // |Phi_{s1,c}| vs envelope
  std::vector<CertificateRow> ik_rows;       // |I^k_{s1,inf}| vs envelope
  std::vector<CertificateRow> taylor_rows;   // remainder integral vs envelope
  std::vector<IdentityRow> identity_rows;    // reassembled decomposition
  bool pass = false;
};

// Measures every piece of the decomposition
//   Phi_{0,c} = sum_{k<=N} taylor_k I^k_{0,s1} + remainder integral +
//               Phi_{s1,c},   I^k_{0,s1} = Gamma(k+1)/lambda^{k+1} -
//               I^k_{s1,inf}
// against the certificate envelopes for each lambda in the grid and each
// N <= N_max.
CertificateReport evaluate_certificate(const BoundCertificate& cert,
                                       const Contour& contour,
                                       const AnalyticFunction& f, int N_max,
                                       std::span<const Complex> lambda_grid,
                                       const ToleranceSpec& tol = {});

// validate_lemma3 + make_certificate + evaluate_certificate.
CertificateReport certify(const Contour& contour, const AnalyticFunction& f,
                          double epsilon, int N_max,
                          std::span<const Complex> lambda_grid,
                          const ToleranceSpec& tol = {});

}  // namespace borelsum
