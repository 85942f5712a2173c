#pragma once

#include <complex>
#include <limits>
#include <variant>
#include <vector>

namespace borelsum {

using Complex = std::complex<double>;

enum class SegmentKind { Ray, PolynomialCurve, CircularArc, SampledPolyline };

// Segment geometries are stored with their full original anchors so that
// restricting the parameter window (straightening, splitting) reproduces
// the original points bit-for-bit on the surviving range.

// G(s) = anchor + (s - anchor_s) * velocity
struct RayShape {
  Complex anchor;
  double anchor_s;
  Complex velocity;
};

// G(s) = (a1 s + a2 s^2) + i (b1 s + b2 s^2), s global
struct PolyShape {
  double a1, a2, b1, b2;
};

// G(s) = radius * exp(i (phase0 + omega (s - s0)))
struct ArcShape {
  double radius;
  double phase0;
  double omega;
  double s0;
};

// Piecewise-linear through points[i] at global parameter knots[i].
struct PolylineShape {
  std::vector<double> knots;
  std::vector<Complex> points;
};

class Segment {
 public:
  Segment(RayShape shape, double s_begin, double s_end);
  Segment(PolyShape shape, double s_begin, double s_end);
  Segment(ArcShape shape, double s_begin, double s_end);
  explicit Segment(PolylineShape shape);

  Complex value(double s) const;
  Complex derivative(double s) const;
  SegmentKind kind() const;
  double s_begin() const { return s_begin_; }
  double s_end() const { return s_end_; }
  Complex start_point() const { return value(s_begin_); }
  Complex end_point() const { return value(s_end_); }

  // Direction vector of the curve leaving s_begin (first nonvanishing
  // derivative); seeds the continuous-argument tracking at the origin.
  Complex initial_direction() const;

  // Parameters strictly inside (s_begin, s_end) where the derivative is
  // discontinuous (polyline knots); empty for smooth segments.
  std::vector<double> interior_breakpoints() const;

  // Same geometry on [new_begin, s_end].
  Segment restricted(double new_begin) const;

 private:
  std::variant<RayShape, PolyShape, ArcShape, PolylineShape> shape_;
  double s_begin_ = 0.0;
  double s_end_ = 0.0;
};

// Convenience constructors.
Segment make_ray(double theta, double length, Complex start = Complex(0.0),
                 double s_begin = 0.0);
Segment make_poly(double a1, double a2, double b1, double b2, double s_begin,
                  double s_end);
// Circular arc centred at 0 continuing from `from_point`, unit angular
// velocity unless overridden; covers s in [from_s, to_s].
Segment make_arc(Complex from_point, double from_s, double to_s,
                 double omega = 1.0);
Segment make_polyline(const std::vector<Complex>& points, double s_begin = 0.0);

struct ArgProfile {
  std::vector<double> s_grid;
  std::vector<double> unwrapped_arg;
  double A = 0.0;               // inf over [s1, c]
  double B = 0.0;               // sup over [s1, c]
  double winding_excess = 0.0;  // max unwrapped span over (0, c]
};

// Piecewise parametric complex curve G(s), s in [0, c], starting at the
// origin.  Construction validates joint continuity, absence of origin
// revisits, and builds the refinement grid used for continuous-argument
// tracking (per-step jumps < pi/2, adaptively bisected).
class Contour {
 public:
  explicit Contour(std::vector<Segment> segments);

  double length() const { return c_; }  // total parameter length c
  std::size_t num_segments() const { return segments_.size(); }
  const Segment& segment(std::size_t i) const { return segments_[i]; }

  Complex point(double s) const;
  Complex derivative(double s) const;
  std::size_t segment_index(double s) const;

  // Continuous (unwrapped) argument of G(s), seeded by lim_{s->0+} arg G(s).
  double unwrapped_arg(double s) const;

  // Distance from p to the curve restricted to parameters [a, b]
  // (grid bracket plus golden-section refinement).
  double min_distance(Complex p, double a, double b) const;

  const std::vector<double>& grid_s() const { return grid_s_; }
  const std::vector<Complex>& grid_g() const { return grid_g_; }
  const std::vector<double>& grid_arg() const { return grid_arg_; }
  bool winding_ok() const { return winding_ok_; }

  // A, B over [s1, c] plus the winding diagnostic; throws WindingFailure
  // when the refinement grid could not keep per-step jumps below pi/2.
  ArgProfile arg_profile(double s1) const;

  // Replace the initial piece [0, s1] by the straight ray to G(s1); the
  // tail is unchanged.  When rho is finite the replaced piece must stay
  // inside |u| < rho.
  Contour straightened(
      double s1, double rho = std::numeric_limits<double>::infinity()) const;

 private:
  void build_grid();

  std::vector<Segment> segments_;
  double c_ = 0.0;
  std::vector<double> grid_s_;
  std::vector<Complex> grid_g_;
  std::vector<double> grid_arg_;
  bool winding_ok_ = true;
  double worst_jump_ = 0.0;
};

Contour build_contour(std::vector<Segment> segments);

// The worked example: polynomial curve (a1, a2, b1, b2) on [0, 1] with
// a2 = -(3 a1 + b1)/5 and b2 = (a1 - 3 b1)/5, continued by the circular
// arc on [1, 1.2].
Contour fig1_contour(double a1, double b1);

// Quadratic coefficients that make |G(s)| strictly increasing on (0, 1)
// with d|G|/ds = 0 exactly at s = 1.
inline double fig1_a2(double a1, double b1) { return -(3.0 * a1 + b1) / 5.0; }
inline double fig1_b2(double a1, double b1) { return (a1 - 3.0 * b1) / 5.0; }

}  // namespace borelsum
