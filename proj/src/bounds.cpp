#include "borelsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "borelsum/errors.hpp"
#include "borelsum/special_functions.hpp"

namespace borelsum {

namespace {

// f with its Taylor polynomial through order N removed; exact for
// rational/geometric models (the polynomial part absorbs the subtraction).
AnalyticFunction taylor_remainder_function(const AnalyticFunction& f, int N) {
  const auto& taylor = f.taylor();
  switch (f.kind()) {
    case EvaluatorKind::Rational:
    case EvaluatorKind::Geometric: {
      std::vector<Complex> poly = f.polynomial();
      if (poly.size() < static_cast<std::size_t>(N) + 1)
        poly.resize(static_cast<std::size_t>(N) + 1, Complex(0.0));
      for (int k = 0; k <= N && k < static_cast<int>(taylor.size()); ++k)
        poly[static_cast<std::size_t>(k)] -= taylor[static_cast<std::size_t>(k)];
      return AnalyticFunction::rational(f.poles(), f.residues(), poly,
                                        static_cast<int>(taylor.size()) - 1);
    }
    case EvaluatorKind::TaylorOnly: {
      std::vector<Complex> coeffs = taylor;
      for (int k = 0; k <= N && k < static_cast<int>(coeffs.size()); ++k)
        coeffs[static_cast<std::size_t>(k)] = 0.0;
      return AnalyticFunction::taylor_only(coeffs, f.rho());
    }
  }
  throw ConfigParse("unknown evaluator kind");
}

}  // namespace

double taylor_remainder_constant(const AnalyticFunction& f, int N,
                                 double sample_radius) {
  double worst = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / 32.0;
    const Complex u = std::polar(sample_radius, phi);
    const double ratio = std::abs(f.taylor_remainder(u, N)) /
                         std::pow(sample_radius, N + 1);
    worst = std::max(worst, ratio);
  }
  return 1.05 * worst;
}

BoundCertificate make_certificate(const Contour& contour,
                                  const AnalyticFunction& f,
                                  const ValidityReport& report, int N_max) {
  BoundCertificate cert;
  cert.K1 = report.K1;
  cert.K2 = report.K2;
  cert.eta = report.eta;
  cert.s1 = report.s1;
  cert.c = contour.length();
  cert.rho = report.rho;
  cert.epsilon = report.epsilon;
  cert.sector = report.sector;
  cert.g_s1 = contour.point(report.s1);

  const double sample_radius =
      std::isfinite(cert.rho) ? 0.9 * cert.rho
                              : std::max(1.0, 2.0 * std::abs(cert.g_s1));
  cert.C_N.resize(static_cast<std::size_t>(N_max) + 1);
  for (int n = 0; n <= N_max; ++n)
    cert.C_N[static_cast<std::size_t>(n)] =
        taylor_remainder_constant(f, n, sample_radius);
  return cert;
}

double k_delta_constant(int k, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw DeltaOutOfRange("delta must lie in (0, 1)");
  if (k == 0) return 1.0;
  return std::pow(static_cast<double>(k) / (delta * std::numbers::e), k);
}

double tail_envelope(const BoundCertificate& cert, Complex lambda) {
  if (!cert.sector.contains(lambda))
    throw OutOfSector("lambda outside the validity sector");
  return cert.K1 * cert.K2 * cert.c *
         std::exp(-std::abs(lambda) * cert.eta * std::sin(cert.epsilon));
}

double incomplete_tail_bound(const BoundCertificate& cert, int k,
                             Complex lambda, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw DeltaOutOfRange("delta must lie in (0, 1)");
  if (!(std::abs(lambda) > 1.0))
    throw ConfigParse("incomplete_tail_bound needs |lambda| > 1");
  const double se = std::sin(cert.epsilon);
  const double al = std::abs(lambda);
  const double x = std::abs(lambda * cert.g_s1) * se;
  return k_delta_constant(k, delta) /
         (std::pow(al * se, k + 1) * (1.0 - delta)) *
         std::exp(-(1.0 - delta) * x);
}

double incomplete_tail_sharp(const BoundCertificate& cert, int k,
                             Complex lambda) {
  const double se = std::sin(cert.epsilon);
  const double x = std::abs(lambda * cert.g_s1) * se;
  return upper_incomplete_gamma(static_cast<double>(k) + 1.0, x) /
         std::pow(std::abs(lambda) * se, k + 1);
}

Complex ik_tail_exact(const BoundCertificate& cert, int k, Complex lambda) {
  const Complex z = lambda * cert.g_s1;
  return upper_incomplete_gamma_int(k, z) /
         std::pow(lambda, static_cast<double>(k) + 1.0);
}

double taylor_remainder_bound(const BoundCertificate& cert, int N,
                              Complex lambda) {
  if (!cert.sector.contains(lambda))
    throw OutOfSector("lambda outside the validity sector");
  const double se = std::sin(cert.epsilon);
  const double cn = cert.C_N[static_cast<std::size_t>(N)];
  return cn * std::tgamma(static_cast<double>(N) + 2.0) /
         std::pow(std::abs(lambda) * se, N + 2);
}

CertificateReport evaluate_certificate(const BoundCertificate& cert,
                                       const Contour& contour,
                                       const AnalyticFunction& f, int N_max,
                                       std::span<const Complex> lambda_grid,
                                       const ToleranceSpec& tol) {
  CertificateReport rep;
  rep.cert = cert;
  rep.pass = true;

  const double c = contour.length();
  const Contour straight = contour.straightened(cert.s1, cert.rho);

  // Taylor-remainder integrands f - T_N f, one per order.
  std::vector<AnalyticFunction> remainder_f;
  remainder_f.reserve(static_cast<std::size_t>(N_max) + 1);
  for (int n = 0; n <= N_max; ++n)
    remainder_f.push_back(taylor_remainder_function(f, n));

  constexpr double kSlack = 1.0 + 1e-12;

  for (const Complex lambda : lambda_grid) {
    const QuadResult full = integrate(contour, f, lambda, 1.0, 1.0, 0.0, c, tol);
    const QuadResult tail =
        integrate(contour, f, lambda, 1.0, 1.0, cert.s1, c, tol);

    {
      CertificateRow row;
      row.index = 0;
      row.lambda = lambda;
      row.measured = std::abs(tail.value);
      row.envelope = tail_envelope(cert, lambda);
      row.ok = row.measured <= row.envelope * kSlack;
      rep.pass = rep.pass && row.ok;
      rep.tail_rows.push_back(row);
    }

    std::vector<Complex> ik_exact(static_cast<std::size_t>(N_max) + 1);
    for (int k = 0; k <= N_max; ++k) {
      ik_exact[static_cast<std::size_t>(k)] = ik_tail_exact(cert, k, lambda);
      CertificateRow row;
      row.index = k;
      row.lambda = lambda;
      row.measured = std::abs(ik_exact[static_cast<std::size_t>(k)]);
      row.envelope = incomplete_tail_bound(cert, k, lambda, cert.delta);
      // The sharp incomplete-gamma value sits between the two.
      const double sharp = incomplete_tail_sharp(cert, k, lambda);
      row.ok = row.measured <= sharp * kSlack && sharp <= row.envelope * kSlack;
      rep.pass = rep.pass && row.ok;
      rep.ik_rows.push_back(row);
    }

    for (int n = 0; n <= N_max; ++n) {
      const QuadResult rint =
          integrate(straight, remainder_f[static_cast<std::size_t>(n)], lambda,
                    1.0, 1.0, 0.0, cert.s1, tol);

      CertificateRow row;
      row.index = n;
      row.lambda = lambda;
      row.measured = std::abs(rint.value);
      row.envelope = taylor_remainder_bound(cert, n, lambda);
      row.ok = row.measured <= row.envelope * kSlack;
      rep.pass = rep.pass && row.ok;
      rep.taylor_rows.push_back(row);

      // Reassemble Phi_{0,c} from the decomposition pieces.
      Complex main_terms = 0.0;
      for (int k = 0; k <= n; ++k) {
        const Complex ik0 =
            std::tgamma(static_cast<double>(k) + 1.0) /
                std::pow(lambda, static_cast<double>(k) + 1.0) -
            ik_exact[static_cast<std::size_t>(k)];
        main_terms += f.taylor()[static_cast<std::size_t>(k)] * ik0;
      }
      const Complex reassembled = main_terms + rint.value + tail.value;
      IdentityRow id;
      id.N = n;
      id.lambda = lambda;
      id.residual_rel =
          std::abs(full.value - reassembled) / std::abs(full.value);
      id.ok = id.residual_rel < 1e-9;
      rep.pass = rep.pass && id.ok;
      rep.identity_rows.push_back(id);
    }
  }
  return rep;
}

CertificateReport certify(const Contour& contour, const AnalyticFunction& f,
                          double epsilon, int N_max,
                          std::span<const Complex> lambda_grid,
                          const ToleranceSpec& tol) {
  CertificateReport rep;
  rep.validity = validate_lemma3(contour, f, epsilon);
  if (!rep.validity.valid) {
    rep.pass = false;
    return rep;
  }
  const BoundCertificate cert =
      make_certificate(contour, f, rep.validity, N_max);
  CertificateReport full =
      evaluate_certificate(cert, contour, f, N_max, lambda_grid, tol);
  full.validity = rep.validity;
  return full;
}

}  // namespace borelsum
