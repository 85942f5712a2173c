#include "borelsum/ambiguity.hpp"

#include <algorithm>
#include <cmath>

#include "borelsum/errors.hpp"
#include "borelsum/validity.hpp"

namespace borelsum {

AmbiguityReport compare_contours(const Contour& ca, const Contour& cb,
                                 const AnalyticFunction& f, double alpha,
                                 double beta,
                                 std::span<const Complex> lambda_grid,
                                 const ToleranceSpec& tol, double epsilon,
                                 std::string name_a, std::string name_b) {
  AmbiguityReport rep;
  rep.contour_a = std::move(name_a);
  rep.contour_b = std::move(name_b);
  rep.alpha = alpha;
  rep.beta = beta;
  rep.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());

  const ValidityReport va = validate_lemma3(ca, f, epsilon);
  const ValidityReport vb = validate_lemma3(cb, f, epsilon);
  const double lo = std::max(va.sector.arg_min, vb.sector.arg_min);
  const double hi = std::min(va.sector.arg_max, vb.sector.arg_max);
  if (!(lo < hi))
    throw SectorMismatch("validity sectors of the two contours do not overlap");

  const std::vector<QuadResult> pa =
      lambda_scan(ca, f, alpha, beta, lambda_grid, tol);
  const std::vector<QuadResult> pb =
      lambda_scan(cb, f, alpha, beta, lambda_grid, tol);

  double err_scale = 0.0;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    rep.delta.push_back(pa[i].value - pb[i].value);
    err_scale = std::max(err_scale,
                         pa[i].abs_error_estimate + pb[i].abs_error_estimate);
  }

  // Fit over the upper half of the |lambda| range; low-|lambda| points
  // carry power-law transients.
  double max_abs_lambda = 0.0;
  for (const Complex& l : rep.lambda_grid)
    max_abs_lambda = std::max(max_abs_lambda, std::abs(l));
  double min_abs_lambda = max_abs_lambda;
  for (const Complex& l : rep.lambda_grid)
    min_abs_lambda = std::min(min_abs_lambda, std::abs(l));
  const double half = 0.5 * (min_abs_lambda + max_abs_lambda);

  std::vector<double> xs, ys;
  bool above_noise = false;
  for (std::size_t i = 0; i < rep.delta.size(); ++i) {
    const double al = std::abs(rep.lambda_grid[i]);
    if (al < half) continue;
    const double ad = std::abs(rep.delta[i]);
    const double floor = 10.0 * (pa[i].abs_error_estimate +
                                 pb[i].abs_error_estimate);
    if (ad > floor) above_noise = true;
    xs.push_back(al);
    ys.push_back(std::log(std::max(ad, 1e-300)));
  }

  if (!above_noise || xs.size() < 2) {
    rep.noise_floor = true;
    rep.fit_rate = kIndistinguishableRate;
    rep.fit_logC = 0.0;
    rep.fit_rms = 0.0;
  } else {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    rep.fit_rate = -slope;
    rep.fit_logC = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double resid = ys[i] - (rep.fit_logC + slope * xs[i]);
      ss += resid * resid;
    }
    rep.fit_rms = std::sqrt(ss / n);
  }

  // Shared-coefficient verification on a dedicated geometric ladder along
  // the common ray (the comparison grid itself need not be geometric).
  // The ladder starts above the comparison range so the beyond-all-orders
  // tails are already far below the power terms being extracted.
  {
    const int n_check = 5;
    const int n_points = n_check + 4;
    const double arg = rep.lambda_grid.empty()
                           ? 0.0
                           : std::arg(rep.lambda_grid.front());
    const double base = 2.0 * std::max(1.0, max_abs_lambda);
    std::vector<Complex> ladder(n_points);
    for (int j = 0; j < n_points; ++j)
      ladder[static_cast<std::size_t>(j)] =
          std::polar(base * std::pow(2.0, j), arg);

    ToleranceSpec tight = tol;
    tight.atol = std::min(tol.atol, 1e-14);
    const std::vector<QuadResult> qa =
        lambda_scan(ca, f, alpha, beta, ladder, tight);
    const std::vector<QuadResult> qb =
        lambda_scan(cb, f, alpha, beta, ladder, tight);
    std::vector<Complex> fa(ladder.size()), fb(ladder.size());
    bool scan_ok = true;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      scan_ok = scan_ok && qa[i].error_code.empty() && qb[i].error_code.empty();
      fa[i] = qa[i].value;
      fb[i] = qb[i].value;
    }
    if (scan_ok) {
      const auto ea = extract_coefficients(ladder, fa, alpha, beta, n_check);
      const auto eb = extract_coefficients(ladder, fb, alpha, beta, n_check);
      int agree = 0;
      for (std::size_t k = 0; k < std::min(ea.size(), eb.size()); ++k) {
        if (std::abs(ea[k].value - eb[k].value) <=
            ea[k].error_bar + eb[k].error_bar)
          ++agree;
        else
          break;
      }
      rep.shared_coeffs_checked = agree;
    }
  }

  return rep;
}

bool beyond_all_orders_check(const AmbiguityReport& report,
                             const AsymptoticSeries& series, int N) {
  if (report.noise_floor) return true;  // difference already invisible

  double max_abs = 0.0;
  for (const Complex& l : report.lambda_grid)
    max_abs = std::max(max_abs, std::abs(l));
  const double octave = 0.5 * max_abs;

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i)
    if (std::abs(report.lambda_grid[i]) >= octave) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(report.lambda_grid[a]) < std::abs(report.lambda_grid[b]);
  });
  if (idx.size() < 2) return false;

  for (int n = 0; n <= N; ++n) {
    const double expo = (static_cast<double>(n) + series.beta) / series.alpha;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const double al = std::abs(report.lambda_grid[idx[j]]);
      const double q = std::abs(report.delta[idx[j]]) * std::pow(al, expo);
      if (q > prev * (1.0 + 1e-9)) return false;
      prev = q;
    }
  }
  return true;
}

}  // namespace borelsum
