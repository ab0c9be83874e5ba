#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace edagepp {

// Numerical tolerances shared by the generator's self-checks.
struct Tolerances {
  double orthonormal = 1e-12;      // R * R^T == I
  double isometry = 1e-9;          // distance preservation under poses
  double spacing_relative = 1e-6;  // spread of consecutive waypoint spacing
  double junction_gap = 1e-9;      // C0 gap between concatenated curves
  double junction_tangent = 1e-6;  // tangent mismatch at junctions [rad]
  double offset = 1e-9;            // corridor boundary offset error
  double collinear = 1e-12;        // relative cross-product threshold for hulls
};

inline constexpr Tolerances kTolerances{};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
  constexpr Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Point2& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

using Vec2 = Point2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
// Counter-clockwise perpendicular.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

struct Rotation2 {
  double m00, m01, m10, m11;
};

// Rigid transform p -> R(angle) * p + translation.
struct Pose2 {
  double angle = 0.0;
  Vec2 translation{};

  Pose2() = default;
  Pose2(double a, Vec2 t) : angle(normalize_angle(a)), translation(t) {}

  Rotation2 rotation() const;
  Point2 apply(Point2 p) const;
  Vec2 apply_vector(Vec2 v) const;
  Pose2 inverse() const;
  // (this * other)(p) == this->apply(other.apply(p))
  Pose2 compose(const Pose2& other) const;
};

struct ConvexHull {
  std::vector<Point2> vertices;     // counter-clockwise, no collinear vertices
  std::vector<int> source_indices;  // index of each vertex in the input

  std::size_t size() const { return vertices.size(); }
  bool contains(Point2 p, double eps = 1e-9) const;
};

// Andrew's monotone chain. Throws DegenerateInput for fewer than three
// distinct points or an all-collinear input.
ConvexHull convex_hull(std::span<const Point2> points);

std::vector<Point2> apply_pose(std::span<const Point2> points, const Pose2& pose);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double point_polyline_distance(Point2 p, std::span<const Point2> polyline);
double polyline_length(std::span<const Point2> polyline);

// A curve over the unit parameter interval.
using ParametricCurve = std::function<Point2(double)>;

struct EqualChordSamples {
  std::vector<double> params;
  std::vector<Point2> points;
  double spacing = 0.0;
};

// Places n points along `curve` so that every pair of consecutive points is
// the same straight-line distance apart, with the first and last points at
// curve(0) and curve(1). `bracket` is an increasing parameter grid starting
// at 0 and ending at 1, fine enough that the curve does not leave and
// re-enter a circle of radius `spacing` between grid nodes.
EqualChordSamples resample_equal_chord(const ParametricCurve& curve, std::span<const double> bracket,
                                       int n);

// Resamples a dense polyline to n points with equal chord spacing. The output
// lies on the polyline and keeps both endpoints.
std::vector<Point2> resample_equal_arclength(std::span<const Point2> dense, int n);

// Relative spread (max - min) / mean of consecutive distances.
double spacing_spread(std::span<const Point2> points);

}  // namespace edagepp
