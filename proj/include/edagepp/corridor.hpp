#pragma once

#include <vector>

#include "edagepp/geom.hpp"
#include "edagepp/pathgen.hpp"
#include "edagepp/raster.hpp"

namespace edagepp {

// Boundary of the clearance band around a path. upper[j] and lower[j] are
// the waypoint offset by +c and -c along its left-hand unit normal; the caps
// are arcs of radius c around the first and last waypoint joining the
// upper and lower boundaries around the outside of each end.
struct CorridorBoundary {
  std::vector<Point2> upper;
  std::vector<Point2> lower;
  std::vector<Point2> start_cap;
  std::vector<Point2> end_cap;
  std::vector<Point2> centers;   // waypoints the offsets were taken from
  std::vector<Vec2> normals;     // unit normals, upper = center + c * normal
  Point2 start{};
  Point2 end{};
  std::vector<Vec2> start_cap_dirs;  // unit directions of the cap points
  std::vector<Vec2> end_cap_dirs;
  double clearance = 0.0;

  // Every boundary point (upper, lower and both caps).
  std::vector<Point2> all_points() const;
  CorridorBoundary transformed(const Pose2& pose) const;
};

// Throws InvalidClearance when c <= 0.
CorridorBoundary calcu_boundary(const PathPolyline& path, double c, int cap_samples = 16);

// Fills, pair by pair, the region swept between consecutive cross sections
// (upper[j], lower[j]) -> (upper[j+1], lower[j+1]) and the fans from each end
// point to its cap. A pixel is free when its center lies in a filled piece.
// Throws OutOfRaster when a boundary point falls outside the raster.
RasterMask rasterize_corridor(const CorridorBoundary& boundary, const RasterConfig& cfg);

// One-pixel-wide line through consecutive waypoints.
RasterMask rasterize_waypoints(std::span<const Point2> waypoints, const RasterConfig& cfg);
// 8-connected, one pixel wide chain through the waypoint pixels, in order.
std::vector<PixelCoord> waypoint_pixels(std::span<const Point2> waypoints, const PixelTransform& t);
RasterMask rasterize_waypoints(const PathPolyline& path, const RasterConfig& cfg);

}  // namespace edagepp
