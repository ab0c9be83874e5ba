#include "edagepp/corridor.hpp"

#include <array>
#include <cstdlib>
#include <cmath>

#include "edagepp/error.hpp"

namespace edagepp {

std::vector<Point2> CorridorBoundary::all_points() const {
  std::vector<Point2> out;
  out.reserve(upper.size() + lower.size() + start_cap.size() + end_cap.size());
  out.insert(out.end(), upper.begin(), upper.end());
  out.insert(out.end(), lower.begin(), lower.end());
  out.insert(out.end(), start_cap.begin(), start_cap.end());
  out.insert(out.end(), end_cap.begin(), end_cap.end());
  return out;
}

CorridorBoundary CorridorBoundary::transformed(const Pose2& pose) const {
  CorridorBoundary out = *this;
  out.upper = apply_pose(upper, pose);
  out.lower = apply_pose(lower, pose);
  out.start_cap = apply_pose(start_cap, pose);
  out.end_cap = apply_pose(end_cap, pose);
  out.centers = apply_pose(centers, pose);
  for (Vec2& n : out.normals) n = pose.apply_vector(n);
  for (Vec2& d : out.start_cap_dirs) d = pose.apply_vector(d);
  for (Vec2& d : out.end_cap_dirs) d = pose.apply_vector(d);
  out.start = pose.apply(start);
  out.end = pose.apply(end);
  return out;
}

namespace {

// Directions sweeping from `from` to `to` through the side facing `away`.
std::vector<Vec2> cap_directions(Vec2 from, Vec2 to, Vec2 away, int samples) {
  const double gap = std::acos(std::clamp(dot(from, to) / (norm(from) * norm(to)), -1.0, 1.0));
  double sign = 1.0;
  if (dot(rotate(from, 0.5 * gap), away) < 0.0) sign = -1.0;
  const Vec2 unit = normalized(from);
  std::vector<Vec2> dirs;
  dirs.reserve(samples);
  for (int j = 0; j < samples; ++j) dirs.push_back(rotate(unit, sign * gap * j / (samples - 1)));
  return dirs;
}

}  // namespace

CorridorBoundary calcu_boundary(const PathPolyline& path, double c, int cap_samples) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidClearance("clearance must be positive");
  if (path.size() < 2) throw DegenerateInput("path needs at least 2 waypoints");
  if (cap_samples < 2) throw DegenerateInput("cap needs at least 2 samples");

  CorridorBoundary b;
  b.clearance = c;
  b.centers = path.points;
  b.start = path.points.front();
  b.end = path.points.back();
  const std::size_t n = path.size();
  b.normals.reserve(n);
  b.upper.reserve(n);
  b.lower.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 normal = perp(normalized(path.tangents[j]));
    b.normals.push_back(normal);
    b.upper.push_back(path.points[j] + normal * c);
    b.lower.push_back(path.points[j] - normal * c);
  }

  b.start_cap_dirs = cap_directions(b.normals.front(), -b.normals.front(), -path.tangents.front(), cap_samples);
  b.end_cap_dirs = cap_directions(b.normals.back(), -b.normals.back(), path.tangents.back(), cap_samples);
  for (const Vec2& d : b.start_cap_dirs) b.start_cap.push_back(b.start + d * c);
  for (const Vec2& d : b.end_cap_dirs) b.end_cap.push_back(b.end + d * c);
  b.start_cap.front() = b.upper.front();
  b.start_cap.back() = b.lower.front();
  b.end_cap.front() = b.upper.back();
  b.end_cap.back() = b.lower.back();
  return b;
}

namespace {

void require_inside(const RasterMask& mask, std::span<const Point2> pts) {
  for (const Point2& p : pts) {
    const Point2 px = mask.world_to_pixel.to_pixel(p);
    if (!(px.x >= 0.0 && px.y >= 0.0 && px.x < mask.width && px.y < mask.height))
      throw OutOfRaster("boundary point outside the raster");
  }
}

}  // namespace

RasterMask rasterize_corridor(const CorridorBoundary& b, const RasterConfig& cfg) {
  RasterMask mask(cfg.width, cfg.height, cfg.transform());
  require_inside(mask, b.upper);
  require_inside(mask, b.lower);
  require_inside(mask, b.start_cap);
  require_inside(mask, b.end_cap);

  const PixelTransform& t = mask.world_to_pixel;
  auto fill = [&](std::span<const Point2> world) {
    std::array<Point2, 4> px;
    for (std::size_t i = 0; i < world.size(); ++i) px[i] = t.to_pixel(world[i]);
    for_each_pixel_in_hull(std::span<const Point2>(px.data(), world.size()), mask.width, mask.height,
                           [&](int col, int row) { mask.set(col, row); });
  };

  if (b.upper.size() == 1) {
    const std::array<Point2, 2> seg{b.upper[0], b.lower[0]};
    fill(seg);
  }
  for (std::size_t j = 0; j + 1 < b.upper.size(); ++j) {
    const std::array<Point2, 4> quad{b.upper[j], b.lower[j], b.upper[j + 1], b.lower[j + 1]};
    fill(quad);
  }
  for (std::size_t j = 0; j + 1 < b.start_cap.size(); ++j) {
    const std::array<Point2, 3> tri{b.start, b.start_cap[j], b.start_cap[j + 1]};
    fill(tri);
  }
  for (std::size_t j = 0; j + 1 < b.end_cap.size(); ++j) {
    const std::array<Point2, 3> tri{b.end, b.end_cap[j], b.end_cap[j + 1]};
    fill(tri);
  }
  return mask;
}

std::vector<PixelCoord> waypoint_pixels(std::span<const Point2> waypoints, const PixelTransform& t) {
  std::vector<PixelCoord> chain;
  auto push = [&](int col, int row) {
    const PixelCoord p{col, row};
    if (!chain.empty() && chain.back() == p) return;
    // Drop corner pixels so the line stays one pixel wide: a pixel whose
    // neighbours in the chain already touch each other is redundant.
    while (chain.size() >= 2) {
      const PixelCoord q = chain[chain.size() - 2];
      if (std::abs(q.col - p.col) > 1 || std::abs(q.row - p.row) > 1) break;
      chain.pop_back();
    }
    if (!chain.empty() && chain.back() == p) return;
    chain.push_back(p);
  };
  if (waypoints.size() == 1) {
    const PixelCoord p = pixel_of(t, waypoints[0]);
    push(p.col, p.row);
  }
  for (std::size_t j = 0; j + 1 < waypoints.size(); ++j)
    for_each_line_pixel(pixel_of(t, waypoints[j]), pixel_of(t, waypoints[j + 1]), push);
  return chain;
}

RasterMask rasterize_waypoints(std::span<const Point2> waypoints, const RasterConfig& cfg) {
  RasterMask mask(cfg.width, cfg.height, cfg.transform());
  require_inside(mask, waypoints);
  for (const PixelCoord& p : waypoint_pixels(waypoints, mask.world_to_pixel)) mask.set(p.col, p.row);
  return mask;
}

RasterMask rasterize_waypoints(const PathPolyline& path, const RasterConfig& cfg) {
  return rasterize_waypoints(path.points, cfg);
}

}  // namespace edagepp
