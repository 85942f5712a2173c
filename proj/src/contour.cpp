#include "borelsum/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {

constexpr double kJointTol = 1e-12;
constexpr double kOriginTol = 1e-14;
constexpr std::size_t kMaxGridPoints = 1u << 20;
constexpr int kMaxBisectDepth = 60;

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Segment

Segment::Segment(RayShape shape, double s_begin, double s_end)
    : shape_(shape), s_begin_(s_begin), s_end_(s_end) {}
Segment::Segment(PolyShape shape, double s_begin, double s_end)
    : shape_(shape), s_begin_(s_begin), s_end_(s_end) {}
Segment::Segment(ArcShape shape, double s_begin, double s_end)
    : shape_(shape), s_begin_(s_begin), s_end_(s_end) {}
Segment::Segment(PolylineShape shape) : shape_(std::move(shape)) {
  const auto& p = std::get<PolylineShape>(shape_);
  if (p.knots.size() < 2 || p.knots.size() != p.points.size())
    throw EmptySpec("polyline needs at least two points");
  s_begin_ = p.knots.front();
  s_end_ = p.knots.back();
}

SegmentKind Segment::kind() const {
  switch (shape_.index()) {
    case 0: return SegmentKind::Ray;
    case 1: return SegmentKind::PolynomialCurve;
    case 2: return SegmentKind::CircularArc;
    default: return SegmentKind::SampledPolyline;
  }
}

Complex Segment::value(double s) const {
  if (const auto* r = std::get_if<RayShape>(&shape_))
    return r->anchor + (s - r->anchor_s) * r->velocity;
  if (const auto* p = std::get_if<PolyShape>(&shape_))
    return Complex(p->a1 * s + p->a2 * s * s, p->b1 * s + p->b2 * s * s);
  if (const auto* a = std::get_if<ArcShape>(&shape_))
    return std::polar(a->radius, a->phase0 + a->omega * (s - a->s0));
  const auto& pl = std::get<PolylineShape>(shape_);
  auto it = std::upper_bound(pl.knots.begin(), pl.knots.end(), s);
  std::size_t i = it == pl.knots.begin()
                      ? 0
                      : static_cast<std::size_t>(it - pl.knots.begin()) - 1;
  if (i >= pl.knots.size() - 1) i = pl.knots.size() - 2;
  const double h = pl.knots[i + 1] - pl.knots[i];
  return pl.points[i] + (s - pl.knots[i]) * (pl.points[i + 1] - pl.points[i]) / h;
}

Complex Segment::derivative(double s) const {
  if (const auto* r = std::get_if<RayShape>(&shape_)) return r->velocity;
  if (const auto* p = std::get_if<PolyShape>(&shape_))
    return Complex(p->a1 + 2.0 * p->a2 * s, p->b1 + 2.0 * p->b2 * s);
  if (const auto* a = std::get_if<ArcShape>(&shape_))
    return Complex(0.0, a->omega) *
           std::polar(a->radius, a->phase0 + a->omega * (s - a->s0));
  const auto& pl = std::get<PolylineShape>(shape_);
  auto it = std::upper_bound(pl.knots.begin(), pl.knots.end(), s);
  std::size_t i = it == pl.knots.begin()
                      ? 0
                      : static_cast<std::size_t>(it - pl.knots.begin()) - 1;
  if (i >= pl.knots.size() - 1) i = pl.knots.size() - 2;
  const double h = pl.knots[i + 1] - pl.knots[i];
  return (pl.points[i + 1] - pl.points[i]) / h;
}

Complex Segment::initial_direction() const {
  if (const auto* r = std::get_if<RayShape>(&shape_)) return r->velocity;
  if (const auto* p = std::get_if<PolyShape>(&shape_)) {
    const Complex lin(p->a1, p->b1);
    if (std::abs(lin) > 0.0) return lin;
    return Complex(p->a2, p->b2);
  }
  if (std::holds_alternative<ArcShape>(shape_)) return derivative(s_begin_);
  return derivative(s_begin_ + 0.0);
}

std::vector<double> Segment::interior_breakpoints() const {
  std::vector<double> out;
  if (const auto* pl = std::get_if<PolylineShape>(&shape_)) {
    for (double k : pl->knots)
      if (k > s_begin_ && k < s_end_) out.push_back(k);
  }
  return out;
}

Segment Segment::restricted(double new_begin) const {
  Segment s = *this;
  s.s_begin_ = new_begin;
  return s;
}

Segment make_ray(double theta, double length, Complex start, double s_begin) {
  if (!(length > 0.0)) throw EmptySpec("ray needs positive length");
  return Segment(RayShape{start, s_begin, std::polar(1.0, theta)}, s_begin,
                 s_begin + length);
}

Segment make_poly(double a1, double a2, double b1, double b2, double s_begin,
                  double s_end) {
  if (!(s_end > s_begin)) throw EmptySpec("poly segment needs s_end > s_begin");
  return Segment(PolyShape{a1, a2, b1, b2}, s_begin, s_end);
}

Segment make_arc(Complex from_point, double from_s, double to_s, double omega) {
  if (!(to_s > from_s)) throw EmptySpec("arc needs to_s > from_s");
  const double radius = std::abs(from_point);
  if (!(radius > 0.0)) throw EmptySpec("arc cannot start at the origin");
  return Segment(ArcShape{radius, std::arg(from_point), omega, from_s}, from_s,
                 to_s);
}

Segment make_polyline(const std::vector<Complex>& points, double s_begin) {
  if (points.size() < 2) throw EmptySpec("polyline needs at least two points");
  PolylineShape shape;
  shape.points = points;
  shape.knots.resize(points.size());
  shape.knots[0] = s_begin;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double chord = std::abs(points[i] - points[i - 1]);
    if (!(chord > 0.0))
      throw EmptySpec("polyline has a zero-length edge at point " +
                      std::to_string(i));
    shape.knots[i] = shape.knots[i - 1] + chord;
  }
  return Segment(std::move(shape));
}

// ---------------------------------------------------------------------------
// Contour

Contour::Contour(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw EmptySpec("contour needs at least one segment");

  if (std::abs(segments_.front().s_begin()) > kJointTol)
    throw EmptySpec("first segment must start at parameter 0");
  if (std::abs(segments_.front().start_point()) > kOriginTol)
    throw EmptySpec("first segment must start at the origin");

  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (std::abs(segments_[i].s_end() - segments_[i + 1].s_begin()) > kJointTol)
      throw JointDiscontinuity("parameter ranges of segments " +
                               std::to_string(i) + " and " +
                               std::to_string(i + 1) + " do not abut");
    const Complex gap =
        segments_[i + 1].start_point() - segments_[i].end_point();
    if (std::abs(gap) > kJointTol)
      throw JointDiscontinuity("gap " + fmt(std::abs(gap)) +
                               " between segments " + std::to_string(i) +
                               " and " + std::to_string(i + 1));
  }
  c_ = segments_.back().s_end();
  if (!(c_ > 0.0)) throw EmptySpec("contour has zero length");

  build_grid();
}

std::size_t Contour::segment_index(double s) const {
  std::size_t lo = 0, hi = segments_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (s <= segments_[mid].s_end())
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

Complex Contour::point(double s) const {
  return segments_[segment_index(s)].value(s);
}

Complex Contour::derivative(double s) const {
  return segments_[segment_index(s)].derivative(s);
}

void Contour::build_grid() {
  // Base grid: 256 samples per segment plus both endpoints; a joint value
  // appears once (segments agree there up to kJointTol).
  grid_s_.clear();
  for (const Segment& seg : segments_) {
    const int n = 256;
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / n;
      grid_s_.push_back(seg.s_begin() + t * (seg.s_end() - seg.s_begin()));
    }
  }
  grid_s_.push_back(c_);

  grid_g_.resize(grid_s_.size());
  for (std::size_t i = 0; i < grid_s_.size(); ++i)
    grid_g_[i] = point(grid_s_[i]);

  const double origin_guard = 1e-6 * c_;
  auto check_zero = [&](double s, const Complex& g) {
    if (s > origin_guard && std::abs(g) < kOriginTol)
      throw OriginRevisit("|G(s)| < 1e-14 at s = " + fmt(s));
  };
  for (std::size_t i = 0; i < grid_s_.size(); ++i)
    check_zero(grid_s_[i], grid_g_[i]);

  // Refine every cell whose argument step is >= pi/2.  A persistent large
  // step with |G| collapsing toward 0 is an origin passage; otherwise the
  // turn is too tight to track and the winding flag is cleared.
  const double max_jump = std::numbers::pi / 2.0;
  std::vector<double> s_out;
  std::vector<Complex> g_out;
  s_out.reserve(grid_s_.size());
  g_out.reserve(grid_s_.size());
  worst_jump_ = 0.0;

  auto arg_step = [](const Complex& from, const Complex& to) {
    return std::arg(to * std::conj(from));
  };

  struct Cell {
    double s0, s1;
    Complex g0, g1;
    int depth;
  };

  // d(arg G)/ds = Im(G'/G); a principal-value step can alias a multiple
  // of 2 pi to something small, so cells are accepted only when the
  // sampled rate also bounds the possible change below pi/2.
  auto arg_rate = [&](double s) {
    const Complex g = point(s);
    const double ag = std::abs(g);
    if (ag == 0.0) return std::numeric_limits<double>::infinity();
    const Complex ratio = derivative(s) / g;
    return std::abs(ratio.imag());
  };
  auto rate_resolved = [&](const Cell& cell) {
    const double width = cell.s1 - cell.s0;
    const double rate = std::max(
        {arg_rate(cell.s0), arg_rate(0.5 * (cell.s0 + cell.s1)),
         arg_rate(cell.s1)});
    return width * rate * 1.5 < max_jump;
  };

  for (std::size_t i = 0; i + 1 < grid_s_.size(); ++i) {
    s_out.push_back(grid_s_[i]);
    g_out.push_back(grid_g_[i]);
    if (grid_s_[i + 1] - grid_s_[i] <= 0.0) continue;
    // Skip steps starting at the origin itself; the seed handles them.
    if (std::abs(grid_g_[i]) < kOriginTol) continue;

    std::vector<Cell> stack;
    stack.push_back({grid_s_[i], grid_s_[i + 1], grid_g_[i], grid_g_[i + 1], 0});
    while (!stack.empty()) {
      Cell cell = stack.back();
      stack.pop_back();
      const double jump = std::abs(arg_step(cell.g0, cell.g1));
      if (jump < max_jump && rate_resolved(cell)) {
        if (cell.s1 < grid_s_[i + 1]) {
          s_out.push_back(cell.s1);
          g_out.push_back(cell.g1);
        }
        continue;
      }
      if (cell.depth >= kMaxBisectDepth ||
          s_out.size() + stack.size() > kMaxGridPoints) {
        worst_jump_ = std::max(worst_jump_, jump);
        winding_ok_ = false;
        if (cell.s1 < grid_s_[i + 1]) {
          s_out.push_back(cell.s1);
          g_out.push_back(cell.g1);
        }
        continue;
      }
      const double sm = 0.5 * (cell.s0 + cell.s1);
      const Complex gm = point(sm);
      check_zero(sm, gm);
      // Right half first so the stack pops left-to-right.
      stack.push_back({sm, cell.s1, gm, cell.g1, cell.depth + 1});
      stack.push_back({cell.s0, sm, cell.g0, gm, cell.depth + 1});
    }
  }
  s_out.push_back(grid_s_.back());
  g_out.push_back(grid_g_.back());

  grid_s_ = std::move(s_out);
  grid_g_ = std::move(g_out);

  // Unwrap, seeded by lim_{s->0+} arg G(s).
  grid_arg_.resize(grid_s_.size());
  const double seed = std::arg(segments_.front().initial_direction());
  grid_arg_[0] = seed;
  for (std::size_t i = 1; i < grid_s_.size(); ++i) {
    const Complex prev = grid_g_[i - 1];
    if (std::abs(prev) < kOriginTol) {
      // Only the origin sample itself: step from the seed direction.
      grid_arg_[i] =
          seed + std::arg(grid_g_[i] * std::conj(std::polar(1.0, seed)));
    } else {
      grid_arg_[i] = grid_arg_[i - 1] + arg_step(prev, grid_g_[i]);
    }
  }
}

double Contour::unwrapped_arg(double s) const {
  if (s <= grid_s_.front()) return grid_arg_.front();
  auto it = std::upper_bound(grid_s_.begin(), grid_s_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - grid_s_.begin()) - 1;
  const Complex g = point(s);
  if (std::abs(g) == 0.0) return grid_arg_[i];
  if (std::abs(grid_g_[i]) < kOriginTol) {
    // Cell anchored at the origin: step back from its right endpoint.
    if (i + 1 >= grid_g_.size()) return grid_arg_[i];
    return grid_arg_[i + 1] + std::arg(g * std::conj(grid_g_[i + 1]));
  }
  return grid_arg_[i] + std::arg(g * std::conj(grid_g_[i]));
}

double Contour::min_distance(Complex p, double a, double b) const {
  // Bracket on the grid, then golden-section per candidate cell.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid_s_.size(); ++i) {
    if (grid_s_[i] < a || grid_s_[i] > b) continue;
    const double d = std::abs(grid_g_[i] - p);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  if (!std::isfinite(best)) return std::abs(point(0.5 * (a + b)) - p);

  double lo = best_i > 0 ? std::max(a, grid_s_[best_i - 1]) : a;
  double hi = best_i + 1 < grid_s_.size() ? std::min(b, grid_s_[best_i + 1]) : b;
  auto dist = [&](double s) { return std::abs(point(s) - p); };
  const double gr = 0.6180339887498949;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

ArgProfile Contour::arg_profile(double s1) const {
  if (!(s1 > 0.0) || !(s1 < c_))
    throw CutoffOutOfRange("arg_profile needs 0 < s1 < c, got s1 = " + fmt(s1));
  if (!winding_ok_)
    throw WindingFailure(
        "refinement could not keep argument steps below pi/2 (worst " +
        fmt(worst_jump_) + " rad); the curve winds too tightly around 0");

  ArgProfile p;
  p.s_grid = grid_s_;
  p.unwrapped_arg = grid_arg_;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const double at_s1 = unwrapped_arg(s1);
  lo = std::min(lo, at_s1);
  hi = std::max(hi, at_s1);
  for (std::size_t i = 0; i < grid_s_.size(); ++i) {
    if (grid_s_[i] < s1) continue;
    lo = std::min(lo, grid_arg_[i]);
    hi = std::max(hi, grid_arg_[i]);
  }
  p.A = lo;
  p.B = hi;

  double wlo = std::numeric_limits<double>::infinity();
  double whi = -wlo;
  for (std::size_t i = 0; i < grid_s_.size(); ++i) {
    if (!(grid_s_[i] > 0.0)) continue;
    wlo = std::min(wlo, grid_arg_[i]);
    whi = std::max(whi, grid_arg_[i]);
  }
  p.winding_excess = whi > wlo ? whi - wlo : 0.0;
  return p;
}

Contour Contour::straightened(double s1, double rho) const {
  if (!(s1 > 0.0) || !(s1 < c_))
    throw CutoffOutOfRange("straighten needs 0 < s1 < c, got s1 = " + fmt(s1));
  if (std::isfinite(rho)) {
    for (std::size_t i = 0; i < grid_s_.size() && grid_s_[i] <= s1; ++i)
      if (std::abs(grid_g_[i]) >= rho)
        throw CutoffOutOfRange("initial piece leaves |u| < rho before s1 = " +
                               fmt(s1));
    if (std::abs(point(s1)) >= rho)
      throw CutoffOutOfRange("|G(s1)| >= rho at s1 = " + fmt(s1));
  }

  const Complex g1 = point(s1);
  std::vector<Segment> segs;
  // Anchoring the ray at (s1, G(s1)) keeps the cut point exact.
  segs.emplace_back(RayShape{g1, s1, g1 / s1}, 0.0, s1);

  const std::size_t idx = segment_index(s1);
  if (segments_[idx].s_end() > s1)
    segs.push_back(segments_[idx].restricted(s1));
  for (std::size_t i = idx + 1; i < segments_.size(); ++i)
    segs.push_back(segments_[i]);

  return Contour(std::move(segs));
}

Contour build_contour(std::vector<Segment> segments) {
  return Contour(std::move(segments));
}

Contour fig1_contour(double a1, double b1) {
  const double a2 = fig1_a2(a1, b1);
  const double b2 = fig1_b2(a1, b1);
  std::vector<Segment> segs;
  segs.push_back(make_poly(a1, a2, b1, b2, 0.0, 1.0));
  const Complex joint(a1 + a2, b1 + b2);
  segs.push_back(make_arc(joint, 1.0, 1.2));
  return Contour(std::move(segs));
}

}  // namespace borelsum
