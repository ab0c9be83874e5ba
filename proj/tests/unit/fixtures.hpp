#pragma once

#include <vector>

#include "edagepp/geom.hpp"
#include "edagepp/pathgen.hpp"
#include "edagepp/scene.hpp"

namespace fixtures {

using namespace edagepp;

// Equally spaced path with n points along the polyline through `corners`.
inline PathPolyline polyline_path(const std::vector<Point2>& corners, int n) {
  std::vector<Point2> dense;
  for (std::size_t i = 0; i + 1 < corners.size(); ++i)
    for (int k = 0; k < 2000; ++k) dense.push_back(corners[i] + (corners[i + 1] - corners[i]) * (k / 2000.0));
  dense.push_back(corners.back());
  PathPolyline p;
  p.points = resample_equal_arclength(dense, n);
  p.spacing = distance(p.points[0], p.points[1]);
  for (std::size_t j = 0; j < p.points.size(); ++j) {
    const Point2 a = p.points[j == 0 ? 0 : j - 1], b = p.points[j + 1 == p.points.size() ? j : j + 1];
    p.tangents.push_back(normalized(b - a));
  }
  return p;
}

inline PathPolyline straight_path(Point2 a, Point2 b, int n = 64) { return polyline_path({a, b}, n); }

// Opening at y = 40 between x = 20 and x = 44, bottom at y = 20.
inline PathPolyline u_path() { return polyline_path({{20, 40}, {20, 20}, {44, 20}, {44, 40}}, 129); }

inline SceneSpec empty_scene(Point2 start, Point2 goal, double c = 3.0) {
  SceneSpec s;
  s.start = start;
  s.goal = goal;
  s.clearance = c;
  return s;
}

}  // namespace fixtures
