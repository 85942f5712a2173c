#include "borelsum/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <queue>
#include <thread>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
// (QUADPACK abscissae/weights); odd indices are the Gauss nodes.
constexpr int kRuleSize = 15;
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  Complex value;
  double error;
};

// One Gauss-Kronrod pass over [lo, hi]; 15 evaluations.
template <typename F>
PanelEstimate gk15(const F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Complex qk = 0.0, qg = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double x = kXgk[j];
    if (j == 7) {
      const Complex y = f(mid);
      qk += kWgk[7] * y;
      qg += kWg[3] * y;
      break;
    }
    const Complex y1 = f(mid - half * x);
    const Complex y2 = f(mid + half * x);
    qk += kWgk[j] * (y1 + y2);
    if (j % 2 == 1) qg += kWg[j / 2] * (y1 + y2);
  }
  const Complex value = qk * half;
  const double err = std::abs((qk - qg) * half);
  return {value, err};
}

struct Panel {
  double lo, hi;
  Complex value;
  double error;
  int space;  // index into the integrand table

  bool operator<(const Panel& other) const {
    if (error != other.error) return error < other.error;
    return lo > other.lo;  // deterministic tie-break
  }
};

// Continuous power u^p along the contour: |u|^p e^{i p arg~(u)} with the
// unwrapped argument.  Callers never hit abs_u = 0 with p <= 0 (the
// endpoint singularity is transformed away first).
Complex branch_pow(double abs_u, double unwrapped, double p) {
  if (abs_u == 0.0) return Complex(0.0);
  return std::polar(std::pow(abs_u, p), p * unwrapped);
}

}  // namespace

Complex LaplaceIntegrand::operator()(double s) const {
  const Complex g = contour.point(s);
  const Complex dg = contour.derivative(s);
  const double ag = std::abs(g);
  Complex expo;
  if (alpha == 1.0) {
    expo = -lambda * g;
  } else {
    expo = -lambda * branch_pow(ag, contour.unwrapped_arg(s), alpha);
  }
  Complex power = 1.0;
  if (beta != 1.0)
    power = branch_pow(ag, contour.unwrapped_arg(s), beta - 1.0);
  return f(g) * std::exp(expo) * power * dg;
}

QuadResult integrate(const Contour& contour, const AnalyticFunction& f,
                     Complex lambda, double alpha, double beta, double a,
                     double b, const ToleranceSpec& tol) {
  const double c = contour.length();
  if (!(a >= 0.0) || !(a < b) || !(b <= c * (1.0 + 1e-12)))
    throw ConfigParse("integrate needs 0 <= a < b <= c");
  b = std::min(b, c);

  // Pole clearance along the path.
  for (const Complex& p : f.poles()) {
    if (contour.min_distance(p, a, b) <= 1e-9)
      throw PoleOnContour("f singular within 1e-9 of the contour (pole at " +
                          std::to_string(p.real()) + (p.imag() < 0 ? "-" : "+") +
                          std::to_string(std::abs(p.imag())) + "i)");
  }

  const LaplaceIntegrand integrand_s{contour, f, alpha, beta, lambda};

  // Integrand in the w = s^beta variable for the singular chunk at s = 0:
  // G^{beta-1} ds = (G/s)^{beta-1} (1/beta) dw, and (G/s)^{beta-1} is
  // regular at the origin.
  auto integrand_w = [&](double w) -> Complex {
    const double s = std::pow(w, 1.0 / beta);
    const Complex g = contour.point(s);
    const Complex dg = contour.derivative(s);
    const double ag = std::abs(g);
    const double uw = contour.unwrapped_arg(s);
    Complex expo = alpha == 1.0 ? -lambda * g
                                : -lambda * branch_pow(ag, uw, alpha);
    const Complex ratio_pow =
        s > 0.0 ? std::polar(std::pow(ag / s, beta - 1.0), (beta - 1.0) * uw)
                : Complex(0.0);
    return f(g) * std::exp(expo) * ratio_pow * dg / beta;
  };

  // Chunk boundaries at segment joints and interior derivative kinks
  // inside (a, b).
  std::vector<double> cuts{a};
  for (std::size_t i = 0; i < contour.num_segments(); ++i) {
    const Segment& seg = contour.segment(i);
    const double e = seg.s_end();
    if (e > a && e < b) cuts.push_back(e);
    for (double k : seg.interior_breakpoints())
      if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  const bool transform_first = beta < 1.0 && a == 0.0;

  std::priority_queue<Panel> queue;
  Complex total = 0.0;
  double total_err = 0.0;
  long long evals = 0;

  auto eval_panel = [&](double lo, double hi, int space) {
    const PanelEstimate e =
        space == 0 ? gk15(integrand_s, lo, hi) : gk15(integrand_w, lo, hi);
    evals += kRuleSize;
    queue.push(Panel{lo, hi, e.value, e.error, space});
    total += e.value;
    total_err += e.error;
  };

  // Seed panels graded dyadically toward both chunk endpoints: the
  // integrand's boundary layer has width ~ 1/|lambda| and would otherwise
  // fall between the nodes of a single wide panel, convincing the error
  // estimate that the chunk is zero.
  auto seed_chunk = [&](double lo, double hi, int space) {
    const double span = hi - lo;
    int depth =
        2 + static_cast<int>(
                std::ceil(std::log2(std::max(1.0, std::abs(lambda) * span))));
    depth = std::clamp(depth, 2, 48);
    std::vector<double> pts;
    pts.push_back(lo);
    for (int k = depth; k >= 1; --k) pts.push_back(lo + span * std::ldexp(1.0, -k));
    for (int k = 2; k <= depth; ++k) pts.push_back(hi - span * std::ldexp(1.0, -k));
    pts.push_back(hi);
    for (std::size_t j = 0; j + 1 < pts.size(); ++j)
      if (pts[j + 1] > pts[j]) eval_panel(pts[j], pts[j + 1], space);
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    if (transform_first && i == 0) {
      seed_chunk(0.0, std::pow(hi, beta), 1);
    } else {
      seed_chunk(lo, hi, 0);
    }
  }

  QuadResult result;
  auto target = [&]() {
    return std::max(tol.atol, tol.rtol * std::abs(total));
  };

  double stuck_err = 0.0;
  while (total_err - stuck_err > 0.0 && total_err > target()) {
    if (evals + 2 * kRuleSize > tol.max_evals)
      throw NoConvergence("evaluation budget exhausted (err " +
                          std::to_string(total_err) + " > target " +
                          std::to_string(target()) + ")");
    Panel worst = queue.top();
    queue.pop();
    total -= worst.value;
    total_err -= worst.error;

    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Cannot split further; keep the contribution and stop touching it.
      total += worst.value;
      total_err += worst.error;
      stuck_err += worst.error;
      continue;
    }
    eval_panel(worst.lo, mid, worst.space);
    eval_panel(mid, worst.hi, worst.space);
  }

  result.value = total;
  result.abs_error_estimate = total_err;
  result.evaluations = evals;
  result.converged = total_err <= target();

  // Damping-sector advisory (epsilon -> 0 limit of the validity sector).
  if (contour.winding_ok()) {
    const double s1 =
        std::min(0.9 * c, std::max(1e-3 * c, a > 0.0 ? a : 1e-3 * c));
    double A = std::numeric_limits<double>::infinity(), B = -A;
    const auto& ss = contour.grid_s();
    const auto& aa = contour.grid_arg();
    for (std::size_t i = 0; i < ss.size(); ++i) {
      if (ss[i] < s1) continue;
      A = std::min(A, aa[i]);
      B = std::max(B, aa[i]);
    }
    const double phi = std::arg(lambda);
    constexpr double kPi = std::numbers::pi;
    bool inside = false;
    for (int k = -1; k <= 1; ++k) {
      const double p = phi + 2.0 * kPi * k;
      if (-kPi / 2.0 - A < p && p < kPi / 2.0 - B) inside = true;
    }
    result.sector_warning = !inside;
  }
  return result;
}

std::vector<QuadResult> lambda_scan(const Contour& contour,
                                    const AnalyticFunction& f, double alpha,
                                    double beta,
                                    std::span<const Complex> lambdas,
                                    const ToleranceSpec& tol, int jobs) {
  std::vector<QuadResult> results(lambdas.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = integrate(contour, f, lambdas[i], alpha, beta, 0.0,
                             contour.length(), tol);
    } catch (const Error& e) {
      results[i] = QuadResult{};
      results[i].converged = false;
      results[i].error_code = e.code();
    }
  };

  if (jobs <= 1 || lambdas.size() < 2) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) run_one(i);
    return results;
  }

  const unsigned n_threads = std::min<std::size_t>(
      static_cast<std::size_t>(jobs), lambdas.size());
  std::vector<std::future<void>> futures;
  futures.reserve(n_threads);
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < n_threads; ++t) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= lambdas.size()) return;
        run_one(i);
      }
    }));
  }
  for (auto& fu : futures) fu.get();
  return results;
}

}  // namespace borelsum
