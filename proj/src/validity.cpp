#include "borelsum/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMonotoneTol = 1e-9;   // d|G|/ds threshold for Lemma 2
constexpr double kPoleClearance = 1e-9;

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// One parabolic polish step around a sampled local extremum of h; returns
// the more extreme of the grid value and the polished value.
template <typename H>
double polish_extremum(const H& h, double s_lo, double s_mid, double s_hi,
                       double h_lo, double h_mid, double h_hi, bool maximize) {
  const double denom = h_hi - 2.0 * h_mid + h_lo;
  double best = h_mid;
  if (denom != 0.0) {
    const double half = 0.5 * (s_hi - s_lo);
    double step = -0.5 * (h_hi - h_lo) / denom * half;
    step = std::clamp(step, -(s_mid - s_lo), s_hi - s_mid);
    const double cand = h(s_mid + step);
    best = maximize ? std::max(best, cand) : std::min(best, cand);
  }
  return best;
}

// Sampled extremum of h over the contour grid restricted to [s_lo, s_hi],
// with one polish step per interior local extremum.
template <typename H>
double grid_extremum(const Contour& contour, const H& h, double s_lo,
                     double s_hi, bool maximize) {
  const auto& grid = contour.grid_s();
  std::vector<double> ss, hh;
  ss.reserve(grid.size());
  for (double s : grid) {
    if (s < s_lo || s > s_hi) continue;
    ss.push_back(s);
    hh.push_back(h(s));
  }
  if (ss.empty()) {
    ss = {s_lo, 0.5 * (s_lo + s_hi), s_hi};
    for (double s : ss) hh.push_back(h(s));
  }
  double best = maximize ? -kInf : kInf;
  for (double v : hh) best = maximize ? std::max(best, v) : std::min(best, v);
  for (std::size_t i = 1; i + 1 < ss.size(); ++i) {
    const bool is_max = hh[i] >= hh[i - 1] && hh[i] >= hh[i + 1];
    const bool is_min = hh[i] <= hh[i - 1] && hh[i] <= hh[i + 1];
    if ((maximize && is_max) || (!maximize && is_min)) {
      const double v = polish_extremum(h, ss[i - 1], ss[i], ss[i + 1],
                                       hh[i - 1], hh[i], hh[i + 1], maximize);
      best = maximize ? std::max(best, v) : std::min(best, v);
    }
  }
  return best;
}

// Largest grid value s1 < c with |G| <= 0.9 rho on [0, s1]; capped at the
// grid point nearest 0.9 c so the tail piece [s1, c] stays nonempty.
double auto_select_s1(const Contour& contour, double rho) {
  const auto& ss = contour.grid_s();
  const auto& gg = contour.grid_g();
  const double cap = 0.9 * contour.length();
  double s1 = 0.0;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (std::abs(gg[i]) > 0.9 * rho) break;
    if (ss[i] > cap) break;
    s1 = ss[i];
  }
  if (!(s1 > 0.0)) {
    // Curve leaves the disc immediately; fall back to a small fraction of c.
    s1 = std::min(1e-3 * contour.length(), cap);
  }
  return s1;
}

double max_abs_f_on_curve(const Contour& contour, const AnalyticFunction& f,
                          double s_lo, double s_hi) {
  auto h = [&](double s) { return std::abs(f(contour.point(s))); };
  return grid_extremum(contour, h, s_lo, s_hi, /*maximize=*/true);
}

double min_pole_distance(const Contour& contour, const AnalyticFunction& f) {
  double d = kInf;
  for (const Complex& p : f.poles())
    d = std::min(d, contour.min_distance(p, 0.0, contour.length()));
  return d;
}

}  // namespace

std::string lemma_name(Lemma lemma) {
  switch (lemma) {
    case Lemma::Watson: return "watson";
    case Lemma::Lemma2: return "lemma2";
    case Lemma::Lemma3: return "lemma3";
  }
  return "?";
}

SectorRegion SectorRegion::from_arg_range(double A, double B, double epsilon) {
  SectorRegion s;
  s.epsilon = epsilon;
  s.arg_min = -kPi / 2.0 - A + epsilon;
  s.arg_max = kPi / 2.0 - B - epsilon;
  return s;
}

bool SectorRegion::contains(double phi) const {
  if (empty()) return false;
  for (int k = -1; k <= 1; ++k) {
    const double p = phi + 2.0 * kPi * k;
    if (arg_min < p && p < arg_max) return true;
  }
  return false;
}

bool SectorRegion::contains(Complex lambda) const {
  return contains(std::arg(lambda));
}

ValidityReport validate_watson(const Contour& contour,
                               const AnalyticFunction& f, double epsilon) {
  ValidityReport r;
  r.lemma = Lemma::Watson;
  r.epsilon = epsilon;
  r.rho = f.rho();

  if (!(epsilon > 0.0) || !(epsilon < kPi / 2.0))
    r.failures.push_back("epsilon must lie in (0, pi/2)");

  // Geometry: the positive real axis traversed at unit speed.
  bool on_axis = true;
  const auto& ss = contour.grid_s();
  const auto& gg = contour.grid_g();
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (std::abs(gg[i].imag()) > 1e-14 ||
        std::abs(gg[i].real() - ss[i]) > 1e-12) {
      on_axis = false;
      break;
    }
  }
  if (!on_axis)
    r.failures.push_back("contour is not the positive real axis G(s) = s");

  r.s1 = auto_select_s1(contour, r.rho);
  r.eta = 0.99 * grid_extremum(
                     contour, [&](double s) { return std::abs(contour.point(s)); },
                     r.s1, contour.length(), false);
  r.K1 = 1.01 * grid_extremum(
                    contour,
                    [&](double s) { return std::abs(contour.derivative(s)); },
                    0.0, contour.length(), true);

  const double pole_dist = min_pole_distance(contour, f);
  if (pole_dist <= kPoleClearance)
    r.failures.push_back("f has a pole within 1e-9 of the contour");
  else
    r.K2 = 1.01 * max_abs_f_on_curve(contour, f, 0.0, contour.length());

  r.A = 0.0;
  r.B = 0.0;
  r.sector = SectorRegion::from_arg_range(r.A, r.B, epsilon);
  r.valid = r.failures.empty();
  return r;
}

ValidityReport validate_lemma2(const Contour& contour,
                               const AnalyticFunction& f, double alpha,
                               double beta, double epsilon) {
  ValidityReport r;
  r.lemma = Lemma::Lemma2;
  r.epsilon = epsilon;
  r.rho = f.rho();

  if (!(alpha > 0.0) || !(beta > 0.0))
    r.failures.push_back("alpha and beta must be positive");
  if (!(epsilon > 0.0)) r.failures.push_back("epsilon must be positive");

  // d|G|/ds = Re(conj(G) G') / |G| must stay above the monotonicity
  // tolerance; scan per segment so one-sided derivatives at joints are
  // seen (the arc case has d|G|/ds identically zero).
  bool monotone = true;
  for (std::size_t si = 0; si < contour.num_segments() && monotone; ++si) {
    const Segment& seg = contour.segment(si);
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
      const double s =
          seg.s_begin() + (seg.s_end() - seg.s_begin()) * i / static_cast<double>(n);
      if (!(s > 0.0)) continue;
      const Complex g = seg.value(s);
      const double ag = std::abs(g);
      if (ag == 0.0) continue;
      const double rp = (g.real() * seg.derivative(s).real() +
                         g.imag() * seg.derivative(s).imag()) /
                        ag;
      if (rp <= kMonotoneTol) {
        if (seg.kind() == SegmentKind::CircularArc)
          r.failures.push_back("r' = 0 on arc (s = " + fmt(s) + ")");
        else
          r.failures.push_back("radius not strictly increasing at s = " +
                               fmt(s));
        monotone = false;
        break;
      }
    }
  }

  if (monotone) {
    // Reparametrize by r = |G(s)| (strictly increasing): g(r) is the
    // unwrapped argument, G'(r) = G'(s) / r'(s).
    r.s1 = auto_select_s1(contour, r.rho);
    const double r0 = std::abs(contour.point(r.s1));

    auto radius = [&](double s) { return std::abs(contour.point(s)); };
    auto radius_rate = [&](double s) {
      const Complex g = contour.point(s);
      const Complex dg = contour.derivative(s);
      const double ag = std::abs(g);
      return ag == 0.0 ? std::abs(dg)
                       : (g.real() * dg.real() + g.imag() * dg.imag()) / ag;
    };

    const double pole_dist = min_pole_distance(contour, f);
    const bool f_ok = pole_dist > kPoleClearance;
    if (!f_ok) r.failures.push_back("f has a pole within 1e-9 of the contour");

    const auto& ss = contour.grid_s();
    std::vector<double> log_r, log_dgdr, log_f, arg_vals;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double s = ss[i];
      if (s < r.s1) continue;
      const double rv = radius(s);
      if (!(rv >= r0) || rv <= 0.0) continue;
      const double rate = radius_rate(s);
      if (rate <= 0.0) continue;
      log_r.push_back(std::log(rv));
      log_dgdr.push_back(std::log(std::abs(contour.derivative(s)) / rate));
      arg_vals.push_back(contour.grid_arg()[i]);
      if (f_ok)
        log_f.push_back(std::log(
            std::max(std::abs(f(contour.grid_g()[i])), 1e-300)));
    }

    // Least-squares exponent fits |G'(r)| <= K1 r^gamma1, |f| <= K2 r^gamma2;
    // the prefactors are then set from the sampled max of value / r^gamma.
    auto fit_envelope = [&](const std::vector<double>& ys, double& K,
                            double& gamma) {
      if (ys.size() < 2 || log_r.size() != ys.size()) {
        K = 0.0;
        gamma = 0.0;
        return;
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double n = static_cast<double>(ys.size());
      for (std::size_t i = 0; i < ys.size(); ++i) {
        sx += log_r[i];
        sy += ys[i];
        sxx += log_r[i] * log_r[i];
        sxy += log_r[i] * ys[i];
      }
      const double denom = n * sxx - sx * sx;
      gamma = denom > 1e-30 ? (n * sxy - sx * sy) / denom : 0.0;
      double max_ratio = -kInf;
      for (std::size_t i = 0; i < ys.size(); ++i)
        max_ratio = std::max(max_ratio, ys[i] - gamma * log_r[i]);
      K = 1.01 * std::exp(max_ratio);
    };
    fit_envelope(log_dgdr, r.K1, r.gamma1);
    if (!log_f.empty()) fit_envelope(log_f, r.K2, r.gamma2);

    if (!arg_vals.empty()) {
      r.A = alpha * *std::min_element(arg_vals.begin(), arg_vals.end());
      r.B = alpha * *std::max_element(arg_vals.begin(), arg_vals.end());
    }
    r.eta = 0.99 * r0;

    if (!contour.winding_ok())
      r.failures.push_back("continuous argument tracking failed");
    if (!(r.B - r.A < kPi - 2.0 * epsilon))
      r.failures.push_back("B - A >= pi - 2 epsilon");
  }

  r.sector = SectorRegion::from_arg_range(r.A, r.B, epsilon);
  r.valid = r.failures.empty();
  return r;
}

ValidityReport validate_lemma3(const Contour& contour,
                               const AnalyticFunction& f, double epsilon,
                               std::optional<double> s1_in) {
  ValidityReport r;
  r.lemma = Lemma::Lemma3;
  r.epsilon = epsilon;
  r.rho = f.rho();

  if (!(epsilon > 0.0)) r.failures.push_back("epsilon must be positive");

  const double c = contour.length();
  if (!std::isfinite(c)) r.failures.push_back("c must be finite");
  if (std::abs(contour.point(0.0)) > 1e-12)
    r.failures.push_back("G(0) != 0");

  // G(s) != 0 for s > 0 is enforced at construction; re-verify on the grid.
  {
    const auto& ss = contour.grid_s();
    const auto& gg = contour.grid_g();
    for (std::size_t i = 0; i < ss.size(); ++i)
      if (ss[i] > 1e-6 * c && std::abs(gg[i]) < 1e-14) {
        r.failures.push_back("G(s) = 0 at s = " + fmt(ss[i]));
        break;
      }
  }

  // Inner cutoff and the holomorphy-disc containment of [0, s1].
  if (s1_in.has_value()) {
    r.s1 = *s1_in;
    if (!(r.s1 > 0.0) || !(r.s1 < c)) {
      r.failures.push_back("s1 out of range (0, c)");
      r.s1 = std::clamp(r.s1, 1e-3 * c, 0.9 * c);
    } else {
      const auto& ss = contour.grid_s();
      const auto& gg = contour.grid_g();
      for (std::size_t i = 0; i < ss.size() && ss[i] <= r.s1; ++i)
        if (std::abs(gg[i]) >= r.rho) {
          r.failures.push_back("initial piece [0, s1] leaves |u| < rho");
          break;
        }
    }
  } else {
    r.s1 = auto_select_s1(contour, r.rho);
  }

  r.eta = 0.99 * grid_extremum(
                     contour, [&](double s) { return std::abs(contour.point(s)); },
                     r.s1, c, false);
  if (!(r.eta > 0.0)) r.failures.push_back("eta = min |G| on [s1, c] is zero");

  r.K1 = 1.01 * grid_extremum(
                    contour,
                    [&](double s) { return std::abs(contour.derivative(s)); },
                    0.0, c, true);
  if (!std::isfinite(r.K1)) r.failures.push_back("K1 = max |G'| not finite");

  const double pole_dist = min_pole_distance(contour, f);
  if (pole_dist <= kPoleClearance) {
    r.failures.push_back("f has a pole within 1e-9 of the contour");
  } else {
    bool domain_ok = true;
    try {
      r.K2 = 1.01 * max_abs_f_on_curve(contour, f, 0.0, c);
    } catch (const EvaluatorDomain&) {
      domain_ok = false;
    }
    if (!domain_ok)
      r.failures.push_back("evaluator domain exceeded along the contour");
    else if (!std::isfinite(r.K2))
      r.failures.push_back("K2 = max |f(G)| not finite");
  }

  if (!contour.winding_ok()) {
    r.failures.push_back("continuous argument tracking failed (winding)");
    r.valid = false;
    r.sector = SectorRegion::from_arg_range(0.0, 0.0, epsilon);
    return r;
  }

  const ArgProfile prof = contour.arg_profile(r.s1);
  r.A = prof.A;
  r.B = prof.B;
  if (!(r.B - r.A < kPi - 2.0 * epsilon))
    r.failures.push_back("B - A >= pi - 2 epsilon");

  r.sector = SectorRegion::from_arg_range(r.A, r.B, epsilon);
  r.valid = r.failures.empty();
  return r;
}

}  // namespace borelsum
