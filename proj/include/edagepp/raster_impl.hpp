#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace edagepp {

namespace detail {

// Inclusive point-in-triangle test; degenerate triangles contain only points
// on their segments.
inline bool in_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
  constexpr double eps = 1e-9;
  const double area = cross(b - a, c - a);
  if (std::abs(area) <= eps) {
    const double d = std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                               point_segment_distance(p, a, c)});
    return d <= eps;
  }
  const double s = area > 0 ? 1.0 : -1.0;
  return s * cross(b - a, p - a) >= -eps && s * cross(c - b, p - b) >= -eps &&
         s * cross(a - c, p - c) >= -eps;
}

inline bool in_point_hull(Point2 p, std::span<const Point2> v) {
  switch (v.size()) {
    case 1: return distance(p, v[0]) <= 1e-9;
    case 2: return point_segment_distance(p, v[0], v[1]) <= 1e-9;
    case 3: return in_triangle(p, v[0], v[1], v[2]);
    default:
      return in_triangle(p, v[0], v[1], v[2]) || in_triangle(p, v[0], v[1], v[3]) ||
             in_triangle(p, v[0], v[2], v[3]) || in_triangle(p, v[1], v[2], v[3]);
  }
}

}  // namespace detail

template <typename Visit>
void for_each_pixel_in_hull(std::span<const Point2> vertices, int width, int height, Visit&& visit) {
  double x0 = vertices[0].x, x1 = x0, y0 = vertices[0].y, y1 = y0;
  for (const Point2& v : vertices) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  const int c0 = std::max(0, static_cast<int>(std::floor(x0 - 0.5)));
  const int c1 = std::min(width - 1, static_cast<int>(std::ceil(x1 - 0.5)));
  const int r0 = std::max(0, static_cast<int>(std::floor(y0 - 0.5)));
  const int r1 = std::min(height - 1, static_cast<int>(std::ceil(y1 - 0.5)));
  for (int row = r0; row <= r1; ++row)
    for (int col = c0; col <= c1; ++col)
      if (detail::in_point_hull({col + 0.5, row + 0.5}, vertices)) visit(col, row);
}

template <typename Visit>
void for_each_line_pixel(PixelCoord a, PixelCoord b, Visit&& visit) {
  int x = a.col, y = a.row;
  const int dx = std::abs(b.col - a.col), sx = a.col < b.col ? 1 : -1;
  const int dy = -std::abs(b.row - a.row), sy = a.row < b.row ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    visit(x, y);
    if (x == b.col && y == b.row) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

}  // namespace edagepp
