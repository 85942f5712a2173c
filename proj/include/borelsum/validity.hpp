#pragma once

#include <optional>
#include <string>
#include <vector>

#include "borelsum/analytic_function.hpp"
#include "borelsum/contour.hpp"

namespace borelsum {

enum class Lemma { Watson, Lemma2, Lemma3 };

std::string lemma_name(Lemma lemma);

// Admissible arg(lambda) interval derived from (epsilon, A, B):
// (-pi/2 - A + epsilon, pi/2 - B - epsilon), open; nonempty iff
// B - A < pi - 2 epsilon.
struct SectorRegion {
  double arg_min = 0.0;
  double arg_max = 0.0;
  double epsilon = 0.0;

  static SectorRegion from_arg_range(double A, double B, double epsilon);

  bool empty() const { return !(arg_min < arg_max); }
  // Membership is tested modulo 2 pi so wide sectors wrap correctly.
  bool contains(double phi) const;
  bool contains(Complex lambda) const;
};

struct ValidityReport {
  Lemma lemma = Lemma::Lemma3;
  bool valid = false;
  double epsilon = 0.0;
  double A = 0.0;
  double B = 0.0;
  SectorRegion sector;
  double s1 = 0.0;    // inner cutoff parameter
  double rho = 0.0;   // holomorphy radius used
  double eta = 0.0;   // min |G| on [s1, c], deflated 1%
  double K1 = 0.0;    // max |G'|, inflated 1%
  double K2 = 0.0;    // max |f(G)|, inflated 1%
  double gamma1 = 0.0;  // growth exponents (Lemma 2 only)
  double gamma2 = 0.0;
  std::vector<std::string> failures;
};

// Straight-ray geometry on the positive real axis; sector |arg lambda| <
// pi/2 - epsilon.
ValidityReport validate_watson(const Contour& contour, const AnalyticFunction& f,
                               double epsilon);

// Radius-parametrized contours G(r) = r e^{i g(r)}: requires d|G|/ds >
// 1e-9 throughout, fits the growth envelopes |G'(r)| <= K1 r^gamma1 and
// |f(G(r))| <= K2 r^gamma2, and builds the sector from inf/sup of
// alpha*g(r).
ValidityReport validate_lemma2(const Contour& contour, const AnalyticFunction& f,
                               double alpha, double beta, double epsilon);

// General parameter contours (alpha = beta = 1, c finite): checks the
// holomorphy-disc containment of the initial piece, eta/K1/K2 finiteness
// and the sector condition B - A < pi - 2 epsilon.  s1 is auto-selected
// as the largest grid value with |G| <= 0.9 rho (capped below c) when not
// supplied.
ValidityReport validate_lemma3(const Contour& contour, const AnalyticFunction& f,
                               double epsilon,
                               std::optional<double> s1 = std::nullopt);

}  // namespace borelsum
