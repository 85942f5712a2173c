#include "borelsum/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {

constexpr double kGammaOverflowArg = 170.0;

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

}  // namespace

Complex AsymptoticSeries::term(int k, Complex lambda) const {
  const GammaCoefficient& ck = coeffs[static_cast<std::size_t>(k)];
  const double expo = (static_cast<double>(k) + beta) / alpha;
  const Complex log_lambda = std::log(lambda);
  // The direct product under/overflows once either factor leaves the
  // double range; switch to the log domain there.
  const bool log_path = ck.overflowed ||
                        std::abs(ck.log_abs) > 600.0 ||
                        expo * std::abs(log_lambda.real()) > 600.0;
  if (!log_path) {
    if (ck.value == Complex(0.0)) return 0.0;
    return ck.value * std::exp(-expo * log_lambda);
  }
  if (ck.log_abs == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(Complex(ck.log_abs, ck.phase) - expo * log_lambda);
}

Complex AsymptoticSeries::partial_sum(int N, Complex lambda) const {
  Complex acc = 0.0;
  const int kmax = std::min<int>(N, static_cast<int>(coeffs.size()) - 1);
  for (int k = 0; k <= kmax; ++k) acc += term(k, lambda);
  return acc;
}

AsymptoticSeries asymptotic_coefficients(const AnalyticFunction& f,
                                         double alpha, double beta, int N) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw ConfigParse("asymptotic_coefficients needs alpha, beta > 0");
  if (N >= static_cast<int>(f.taylor().size()))
    throw ConfigParse("N exceeds the stored Taylor order of f");

  AsymptoticSeries s;
  s.alpha = alpha;
  s.beta = beta;
  s.n_max = N;
  s.coeffs.resize(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    const double garg = (static_cast<double>(k) + beta) / alpha;
    const Complex tk = f.taylor()[static_cast<std::size_t>(k)];
    GammaCoefficient& out = s.coeffs[static_cast<std::size_t>(k)];
    if (garg > kGammaOverflowArg) {
      out.overflowed = true;
      if (tk == Complex(0.0)) {
        out.value = 0.0;
        out.log_abs = -std::numeric_limits<double>::infinity();
        out.phase = 0.0;
      } else {
        out.log_abs = std::lgamma(garg) + std::log(std::abs(tk)) -
                      std::log(alpha);
        out.phase = std::arg(tk);
      }
    } else {
      out.value = std::tgamma(garg) * tk / alpha;
      const double av = std::abs(out.value);
      out.log_abs = av > 0.0 ? std::log(av)
                             : -std::numeric_limits<double>::infinity();
      out.phase = std::arg(out.value);
    }
  }
  return s;
}

std::vector<ExtractedCoefficient> extract_coefficients(
    std::span<const Complex> lambdas, std::span<const Complex> phis,
    double alpha, double beta, int n_max, std::span<const double> phi_noise) {
  if (lambdas.size() != phis.size())
    throw ConfigParse("extract_coefficients: size mismatch");
  if (!phi_noise.empty() && phi_noise.size() != phis.size())
    throw ConfigParse("extract_coefficients: noise vector size mismatch");
  const std::size_t m = lambdas.size();
  if (static_cast<int>(m) < n_max + 4)
    throw ConfigParse("extract_coefficients needs at least n_max + 4 samples");

  // The ladder must be geometric with ratio >= 2 at fixed arg.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(lambdas[a]) < std::abs(lambdas[b]);
  });
  double q = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double r =
        std::abs(lambdas[order[i + 1]]) / std::abs(lambdas[order[i]]);
    if (i == 0)
      q = r;
    else if (std::abs(r / q - 1.0) > 1e-9)
      throw ConfigParse("lambda samples are not on a geometric ladder");
    const double dphi = std::arg(lambdas[order[i + 1]] / lambdas[order[i]]);
    if (std::abs(dphi) > 1e-12)
      throw ConfigParse("lambda samples are not on a single ray");
  }
  if (!(q >= 2.0 * (1.0 - 1e-12)))
    throw ConfigParse("geometric ratio must be >= 2");

  // Joint recovery: with y = Phi * lambda^{beta/alpha} and x =
  // lambda^{-1/alpha}, the expansion reads y = sum_k F_k x^k, so the F_k
  // are the monomial coefficients of the interpolating polynomial through
  // the rungs.  (Order-by-order subtraction with a short Richardson table
  // cannot reach k >= 4: the bias of each recovered coefficient re-enters
  // later orders amplified by lambda^{n-k}.)  Geometric rungs cluster x
  // at 0, which keeps the extrapolation to x = 0 well conditioned.
  std::vector<Complex> xs_all(m), ys_all(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex log_lam = std::log(lambdas[order[i]]);
    // Nodes ordered by decreasing lambda, i.e. |x| increasing toward the
    // evaluation point's far side.
    xs_all[m - 1 - i] = std::exp(-log_lam / alpha);
    ys_all[m - 1 - i] = phis[order[i]] * std::exp((beta / alpha) * log_lam);
  }

  // Newton divided differences on nodes xs[lo..m), converted to monomial
  // coefficients about x = 0.
  auto interpolate = [&](const std::vector<Complex>& ys, std::size_t count) {
    std::vector<Complex> dd(ys.begin(), ys.begin() + count);
    for (std::size_t level = 1; level < count; ++level)
      for (std::size_t i = count - 1; i >= level; --i)
        dd[i] = (dd[i] - dd[i - 1]) / (xs_all[i] - xs_all[i - level]);
    std::vector<Complex> mono(count, Complex(0.0));
    for (std::size_t i = count; i-- > 0;) {
      for (std::size_t k = count - 1; k > 0; --k)
        mono[k] = mono[k - 1] - xs_all[i] * mono[k];
      mono[0] = dd[i] - xs_all[i] * mono[0];
    }
    return mono;
  };

  const std::vector<Complex> full = interpolate(ys_all, m);
  // Dropping the lowest rung (= last node) probes the truncation order.
  const std::vector<Complex> reduced = interpolate(ys_all, m - 1);

  // Noise propagation: response of each coefficient to per-rung sample
  // noise, via interpolation of basis vectors.  Without an explicit noise
  // vector the samples are assumed accurate to ~3e-16 relative (converged
  // Gauss-Kronrod results at tight tolerances).
  std::vector<double> noise_bar(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double sigma_y = 3e-16 * std::abs(ys_all[j]);
    if (!phi_noise.empty()) {
      // ys are ordered by decreasing lambda; map back to the sample index.
      const std::size_t sample = order[m - 1 - j];
      const Complex lam = lambdas[sample];
      sigma_y = std::max(
          sigma_y, phi_noise[sample] *
                       std::abs(std::exp((beta / alpha) * std::log(lam))));
    }
    std::vector<Complex> basis(m, Complex(0.0));
    basis[j] = 1.0;
    const std::vector<Complex> w = interpolate(basis, m);
    for (std::size_t k = 0; k < m; ++k)
      noise_bar[k] += std::abs(w[k]) * sigma_y;
  }

  std::vector<ExtractedCoefficient> out;
  double scale = 0.0;  // running max |F_k| for the ill-conditioning floor
  for (int n = 0; n <= n_max && n < static_cast<int>(full.size()); ++n) {
    ExtractedCoefficient ec;
    ec.value = full[static_cast<std::size_t>(n)];
    const Complex other = n < static_cast<int>(reduced.size())
                              ? reduced[static_cast<std::size_t>(n)]
                              : Complex(0.0);
    ec.error_bar = 10.0 * std::abs(ec.value - other) +
                   noise_bar[static_cast<std::size_t>(n)] +
                   1e-14 * (1.0 + std::abs(ec.value));

    scale = std::max(scale, std::abs(ec.value));
    const double floor = 1e-4 * scale;
    if (ec.error_bar > 0.1 * std::abs(ec.value) && ec.error_bar > floor)
      break;  // ill-conditioned from here on
    out.push_back(ec);
  }
  return out;
}

RemainderReport remainder_scan(const Contour& contour,
                               const AnalyticFunction& f, double alpha,
                               double beta, int N,
                               std::span<const Complex> lambda_grid,
                               const ToleranceSpec& tol) {
  RemainderReport rep;
  rep.N = N;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.lambda_samples.assign(lambda_grid.begin(), lambda_grid.end());

  const AsymptoticSeries series = asymptotic_coefficients(f, alpha, beta, N);
  const std::vector<QuadResult> phis =
      lambda_scan(contour, f, alpha, beta, lambda_grid, tol);

  std::vector<double> logl, logr;
  const double scaled_expo = (static_cast<double>(N) + 1.0 + beta) / alpha;
  for (std::size_t i = 0; i < rep.lambda_samples.size(); ++i) {
    if (!phis[i].error_code.empty())
      throw NoConvergence("remainder_scan: quadrature failed at lambda #" +
                          std::to_string(i) + " (" + phis[i].error_code + ")");
    const Complex lam = rep.lambda_samples[i];
    const Complex r = phis[i].value - series.partial_sum(N, lam);
    rep.remainders.push_back(r);
    rep.scaled.push_back(std::abs(r) * std::pow(std::abs(lam), scaled_expo));
    if (std::abs(r) > 0.0) {
      logl.push_back(std::log(std::abs(lam)));
      logr.push_back(std::log(std::abs(r)));
    }
  }

  rep.slope_fit = logl.size() >= 2 ? ls_slope(logl, logr) : 0.0;
  const double required =
      -(static_cast<double>(N) + beta) / alpha - 1.0 / alpha + 0.1;
  rep.passes = logl.size() >= 2 && rep.slope_fit <= required;
  return rep;
}

}  // namespace borelsum
