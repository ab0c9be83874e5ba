#include "edagepp/geom.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "edagepp/error.hpp"

namespace edagepp {

double normalize_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

Rotation2 Pose2::rotation() const {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

Point2 Pose2::apply(Point2 p) const { return apply_vector(p) + translation; }

Vec2 Pose2::apply_vector(Vec2 v) const {
  const Rotation2 r = rotation();
  return {r.m00 * v.x + r.m01 * v.y, r.m10 * v.x + r.m11 * v.y};
}

Pose2 Pose2::inverse() const {
  Pose2 inv;
  inv.angle = normalize_angle(-angle);
  inv.translation = -inv.apply_vector(translation);
  return inv;
}

Pose2 Pose2::compose(const Pose2& other) const {
  return Pose2(angle + other.angle, apply_vector(other.translation) + translation);
}

bool ConvexHull::contains(Point2 p, double eps) const {
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices[i];
    const Point2 b = vertices[(i + 1) % n];
    const Vec2 e = b - a;
    if (cross(e, p - a) < -eps * std::max(1.0, norm(e))) return false;
  }
  return true;
}

ConvexHull convex_hull(std::span<const Point2> points) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Point2 pa = points[a], pb = points[b];
    return pa.x < pb.x || (pa.x == pb.x && (pa.y < pb.y || (pa.y == pb.y && a < b)));
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](int a, int b) { return points[a] == points[b]; }),
              order.end());
  if (order.size() < 3) throw DegenerateInput("convex hull needs at least 3 distinct points");

  // Scale-aware collinearity threshold.
  double extent = 0.0;
  for (int i : order) extent = std::max({extent, std::abs(points[i].x), std::abs(points[i].y)});
  const double eps = kTolerances.collinear * std::max(1.0, extent * extent);

  auto turn = [&](int o, int a, int b) {
    return cross(points[a] - points[o], points[b] - points[o]);
  };

  std::vector<int> hull(2 * order.size());
  std::size_t k = 0;
  for (int idx : order) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], idx) <= eps) --k;
    hull[k++] = idx;
  }
  for (std::size_t i = order.size() - 1, lower = k + 1; i-- > 0;) {
    const int idx = order[i];
    while (k >= lower && turn(hull[k - 2], hull[k - 1], idx) <= eps) --k;
    hull[k++] = idx;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateInput("all points are collinear");

  ConvexHull out;
  out.source_indices = std::move(hull);
  out.vertices.reserve(out.source_indices.size());
  for (int idx : out.source_indices) out.vertices.push_back(points[idx]);
  return out;
}

std::vector<Point2> apply_pose(std::span<const Point2> points, const Pose2& pose) {
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back(pose.apply(p));
  return out;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double point_polyline_distance(Point2 p, std::span<const Point2> polyline) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return distance(p, polyline.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    best = std::min(best, point_segment_distance(p, polyline[i], polyline[i + 1]));
  return best;
}

double polyline_length(std::span<const Point2> polyline) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) total += distance(polyline[i], polyline[i + 1]);
  return total;
}

double spacing_spread(std::span<const Point2> points) {
  if (points.size() < 3) return 0.0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double d = distance(points[i], points[i + 1]);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    sum += d;
  }
  return (hi - lo) / (sum / static_cast<double>(points.size() - 1));
}

namespace {

struct MarchState {
  std::vector<double> params;
  std::vector<Point2> points;
  bool ran_out = false;
};

// Walks `steps` chords of length d from curve(0). Each new point is the first
// crossing of the circle of radius d around the previous point.
MarchState march(const ParametricCurve& curve, std::span<const double> bracket,
                 std::span<const Point2> bracket_points, double d, int steps) {
  MarchState st;
  st.params.reserve(steps + 1);
  st.points.reserve(steps + 1);
  double t = 0.0;
  Point2 p = bracket_points.front();
  st.params.push_back(t);
  st.points.push_back(p);
  std::size_t k = 1;
  for (int s = 0; s < steps; ++s) {
    while (k < bracket.size() && bracket[k] <= t) ++k;
    while (k < bracket.size() && distance(bracket_points[k], p) < d) ++k;
    if (k == bracket.size()) {
      st.ran_out = true;
      return st;
    }
    double lo = std::max(t, bracket[k - 1]);
    double hi = bracket[k];
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (distance(curve(mid), p) < d) lo = mid; else hi = mid;
    }
    t = hi;
    p = curve(t);
    st.params.push_back(t);
    st.points.push_back(p);
  }
  return st;
}

}  // namespace

EqualChordSamples resample_equal_chord(const ParametricCurve& curve, std::span<const double> bracket,
                                       int n) {
  if (n < 2) throw DegenerateInput("resampling needs n >= 2");
  if (bracket.size() < 2 || bracket.front() != 0.0 || bracket.back() != 1.0)
    throw DegenerateInput("bracket grid must span [0, 1]");

  std::vector<Point2> bpts;
  bpts.reserve(bracket.size());
  for (double t : bracket) bpts.push_back(curve(t));
  const double dense_length = polyline_length(bpts);
  if (!(dense_length > 0.0)) throw DegenerateInput("zero-length curve");

  EqualChordSamples out;
  const Point2 end = bpts.back();
  if (n == 2) {
    out.params = {0.0, 1.0};
    out.points = {bpts.front(), end};
    out.spacing = distance(bpts.front(), end);
    if (!(out.spacing > 0.0)) throw DegenerateInput("closed curve cannot be resampled with n = 2");
    return out;
  }

  // residual(d) = d - |end - p_{n-2}(d)|: negative while d is too short.
  auto evaluate = [&](double d, MarchState& st) {
    st = march(curve, bracket, bpts, d, n - 2);
    if (st.ran_out) return std::numeric_limits<double>::infinity();
    return d - distance(end, st.points.back());
  };

  MarchState st;
  double lo = 0.0, r_lo = -std::numeric_limits<double>::infinity();
  double hi = dense_length / static_cast<double>(n - 1);
  double r_hi = evaluate(hi, st);
  while (r_hi < 0.0) {
    lo = hi;
    r_lo = r_hi;
    hi *= 2.0;
    r_hi = evaluate(hi, st);
  }

  // Bracketed root search: secant (Illinois) steps when both ends are finite,
  // bisection otherwise.
  double best_d = hi;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double d;
    if (std::isfinite(r_lo) && std::isfinite(r_hi)) {
      d = (lo * r_hi - hi * r_lo) / (r_hi - r_lo);
      if (!(d > lo && d < hi)) d = 0.5 * (lo + hi);
    } else {
      d = 0.5 * (lo + hi);
    }
    const double r = evaluate(d, st);
    if (r < 0.0) {
      lo = d;
      r_lo = r;
      if (side == -1 && std::isfinite(r_hi)) r_hi *= 0.5;
      side = -1;
    } else {
      hi = d;
      r_hi = r;
      if (side == 1 && std::isfinite(r_lo)) r_lo *= 0.5;
      side = 1;
    }
    best_d = d;
    if (std::isfinite(r) && std::abs(r) <= 1e-14 * d) break;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      best_d = lo;
      break;
    }
  }

  evaluate(best_d, st);
  if (st.ran_out) throw DegenerateInput("equal-chord resampling did not converge");
  out.params = std::move(st.params);
  out.points = std::move(st.points);
  out.params.push_back(1.0);
  out.points.push_back(end);
  out.spacing = best_d;
  return out;
}

std::vector<Point2> resample_equal_arclength(std::span<const Point2> dense, int n) {
  if (dense.size() < 2) throw DegenerateInput("polyline needs at least 2 points");
  if (n < 2) throw DegenerateInput("resampling needs n >= 2");
  std::vector<double> cumulative(dense.size(), 0.0);
  for (std::size_t i = 1; i < dense.size(); ++i)
    cumulative[i] = cumulative[i - 1] + distance(dense[i - 1], dense[i]);
  const double total = cumulative.back();
  if (!(total > 0.0)) throw DegenerateInput("zero-length polyline");

  std::vector<double> bracket(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) bracket[i] = cumulative[i] / total;
  bracket.back() = 1.0;
  // Drop repeated vertices so the bracket grid is strictly increasing.
  std::vector<double> grid;
  std::vector<Point2> verts;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!grid.empty() && bracket[i] <= grid.back()) continue;
    grid.push_back(bracket[i]);
    verts.push_back(dense[i]);
  }
  grid.back() = 1.0;
  verts.back() = dense.back();

  ParametricCurve curve = [&](double t) {
    if (t <= 0.0) return verts.front();
    if (t >= 1.0) return verts.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    const double f = (t - grid[i]) / (grid[i + 1] - grid[i]);
    return verts[i] + (verts[i + 1] - verts[i]) * f;
  };
  return resample_equal_chord(curve, grid, n).points;
}

}  // namespace edagepp
