#include "borelsum/adler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double transform_factor(double beta0, int n) {
  // beta0^n n!
  double f = 1.0;
  for (int i = 1; i <= n; ++i) f *= beta0 * static_cast<double>(i);
  return f;
}

Complex ray_resum(const AnalyticFunction& B, double beta0, Complex lambda,
                  double theta, double c, const ToleranceSpec& tol) {
  std::vector<Segment> segs;
  segs.push_back(make_ray(theta, c));
  const Contour ray(std::move(segs));
  return integrate(ray, B, lambda, 1.0, 1.0, 0.0, c, tol).value / beta0;
}

}  // namespace

double BorelModel::rho() const {
  if (!function.has_value()) return kInf;
  return function->rho();
}

BorelModel borel_transform(std::span<const double> D, double beta0) {
  if (D.empty()) throw ConfigParse("borel_transform: empty coefficient list");
  if (beta0 == 0.0) throw ConfigParse("borel_transform: beta0 must be nonzero");
  BorelModel m;
  m.beta0 = beta0;
  m.b.resize(D.size());
  for (std::size_t n = 0; n < D.size(); ++n)
    m.b[n] = D[n] / transform_factor(beta0, static_cast<int>(n));
  m.source_D = std::vector<double>(D.begin(), D.end());
  return m;
}

std::vector<double> perturbative_coefficients(const BorelModel& model) {
  if (model.source_D.has_value() && model.source_D->size() == model.b.size())
    return *model.source_D;
  std::vector<double> D(model.b.size());
  for (std::size_t n = 0; n < model.b.size(); ++n)
    D[n] = model.b[n] * transform_factor(model.beta0, static_cast<int>(n));
  return D;
}

Complex resum(const BorelModel& model, const Contour& contour, CouplingPoint a,
              const ToleranceSpec& tol) {
  if (!model.function.has_value())
    throw ConfigParse("resum needs a Borel model with a global evaluator");
  const Complex lambda = 1.0 / (model.beta0 * a.a);
  return integrate(contour, *model.function, lambda, 1.0, 1.0, 0.0,
                   contour.length(), tol)
             .value /
         model.beta0;
}

PvResult pv_resum(const BorelModel& model, double c, CouplingPoint a,
                  const ToleranceSpec& tol) {
  if (!model.function.has_value())
    throw ConfigParse("pv_resum needs a Borel model with a global evaluator");
  const AnalyticFunction& B = *model.function;
  const Complex lambda = 1.0 / (model.beta0 * a.a);
  if (std::abs(lambda.imag()) > 1e-12 * std::abs(lambda) ||
      !(lambda.real() > 0.0))
    throw ConfigParse("pv_resum needs real positive lambda = 1/(beta0 a)");

  // Reject non-simple poles on the integration range.
  const auto& poles = B.poles();
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Complex p = poles[i];
    const bool on_range = std::abs(p.imag()) < 1e-12 && p.real() > 0.0 &&
                          p.real() < c;
    if (!on_range) continue;
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[j] - p) < 1e-12)
        throw NonSimplePole("repeated pole at u = " +
                            std::to_string(p.real()));
  }

  // Rotated-lip ladder; the lip values are theta-independent up to the
  // truncated far endpoint, so the extrapolation mostly removes noise.
  const double thetas[3] = {1e-2, 5e-3, 2.5e-3};
  Complex up[3], lo[3];
  for (int i = 0; i < 3; ++i) {
    up[i] = ray_resum(B, model.beta0, lambda, +thetas[i], c, tol);
    lo[i] = ray_resum(B, model.beta0, lambda, -thetas[i], c, tol);
  }

  // Richardson in theta^2 (ratio 1/2 per rung -> 1/4 in theta^2).
  auto extrapolate = [](const Complex v[3]) {
    const Complex r1a = (4.0 * v[1] - v[0]) / 3.0;
    const Complex r1b = (4.0 * v[2] - v[1]) / 3.0;
    return (16.0 * r1b - r1a) / 15.0;
  };
  const Complex u_star = extrapolate(up);
  const Complex l_star = extrapolate(lo);

  const double spread_raw = std::abs(up[0] - up[2]) + std::abs(lo[0] - lo[2]);
  const double spread_ext = std::abs(u_star - up[2]) + std::abs(l_star - lo[2]);
  if (spread_ext > 5.0 * spread_raw + 1e3 * tol.atol &&
      spread_ext > 1e-9 * std::abs(u_star))
    throw ExtrapolationDivergence("theta -> 0 extrapolation diverged");

  PvResult r;
  r.upper = u_star;
  r.lower = l_star;
  r.pv = 0.5 * (u_star + l_star);
  r.lip_gap_abs = 0.5 * std::abs(u_star - l_star);
  return r;
}

SacFit sac_fit(std::span<const RemainderReport> reports) {
  if (reports.size() < 5)
    throw InsufficientOrders("sac_fit needs reports for N = 0..N_max, N_max >= 4");
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (reports[i].lambda_samples.size() != reports[0].lambda_samples.size())
      throw ConfigParse("sac_fit needs a common lambda grid");
  }

  std::vector<double> ns, ys;
  for (const RemainderReport& rep : reports) {
    double best = -kInf;
    for (std::size_t i = 0; i < rep.remainders.size(); ++i) {
      const double ar = std::abs(rep.remainders[i]);
      if (ar <= 0.0) continue;
      const double al = std::abs(rep.lambda_samples[i]);
      best = std::max(best, std::log(ar) + rep.N * std::log(al) -
                                std::lgamma(static_cast<double>(rep.N) + 1.0));
    }
    if (best == -kInf) continue;
    ns.push_back(static_cast<double>(rep.N));
    ys.push_back(best);
  }
  if (ns.size() < 2) throw InsufficientOrders("sac_fit: too few usable orders");

  const double n = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sx += ns[i];
    sy += ys[i];
    sxx += ns[i] * ns[i];
    sxy += ns[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;

  SacFit fit;
  fit.sigma_hat = std::exp(slope);
  fit.A_hat = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double resid = ys[i] - (intercept + slope * ns[i]);
    ss += resid * resid;
  }
  fit.rms = std::sqrt(ss / n);
  fit.ok = fit.rms < 0.3;
  return fit;
}

namespace {

CarlemanResult carleman_from_logs(const std::vector<double>& log_b, int M) {
  CarlemanResult r;
  const int count = std::min<int>(M, static_cast<int>(log_b.size()));
  r.partial_sums.reserve(static_cast<std::size_t>(count));
  double acc = 0.0;
  for (int n = 1; n <= count; ++n) {
    acc += std::exp(-log_b[static_cast<std::size_t>(n - 1)] /
                    static_cast<double>(n));
    r.partial_sums.push_back(acc);
  }
  // Slope of the partial sums against log n over the last decade; a
  // divergent sum keeps growing per decade, a convergent one flattens.
  const int n_hi = count;
  const int n_lo = std::max(1, n_hi / 10);
  if (n_hi > n_lo) {
    const double ds = r.partial_sums[static_cast<std::size_t>(n_hi - 1)] -
                      r.partial_sums[static_cast<std::size_t>(n_lo - 1)];
    const double dlog = std::log(static_cast<double>(n_hi)) -
                        std::log(static_cast<double>(n_lo));
    r.tail_slope = ds / dlog;
  }
  r.divergent = r.tail_slope > 1e-3;
  return r;
}

}  // namespace

CarlemanResult carleman_partial_sums(std::span<const double> b, int M) {
  std::vector<double> logs;
  logs.reserve(b.size());
  for (double v : b) {
    if (!(v > 0.0)) throw NonPositiveBound("carleman bounds must be positive");
    logs.push_back(std::log(v));
  }
  return carleman_from_logs(logs, M);
}

CarlemanResult carleman_partial_sums_log(std::span<const double> log_b, int M) {
  std::vector<double> logs(log_b.begin(), log_b.end());
  for (double v : logs)
    if (!std::isfinite(v))
      throw NonPositiveBound("carleman log-bounds must be finite");
  return carleman_from_logs(logs, M);
}

BorelModel canonical_demo_model(double beta0) {
  BorelModel m;
  m.beta0 = beta0;
  m.function = AnalyticFunction::rational(
      {Complex(-1.0, 0.0), Complex(2.0, 0.0)},
      {Complex(3.0, 0.0), Complex(-2.0, 0.0)},
      {Complex(0.2, 0.0), Complex(0.1, 0.0)});
  const auto& taylor = m.function->taylor();
  m.b.assign(taylor.size(), 0.0);
  for (std::size_t n = 0; n < taylor.size(); ++n) m.b[n] = taylor[n].real();
  return m;
}

}  // namespace borelsum
