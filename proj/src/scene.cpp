#include "edagepp/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "edagepp/error.hpp"

namespace edagepp {

void SceneConfig::validate() const {
  raster.validate();
  if (!(clearance > 0.0)) throw ConfigError("clearance must be positive");
  if (!(filler_radius_min > 0.0) || filler_radius_max < filler_radius_min)
    throw ConfigError("invalid filler radius range");
  if (max_obstacles < 0) throw ConfigError("max_obstacles must be >= 0");
  if (marker_side < 1) throw ConfigError("marker_side must be >= 1");
  if (pose_tries < 1) throw ConfigError("pose_tries must be >= 1");
}

void GeneratorConfig::validate() const {
  path.validate();
  scene.validate();
  if (paths < 0 || per_path < 1) throw ConfigError("paths must be >= 0 and per_path >= 1");
  if (max_path_attempts < 1) throw ConfigError("max_path_attempts must be >= 1");
  if (!(min_optimality >= 0.0 && min_optimality <= 1.0)) throw ConfigError("min_optimality must be in [0, 1]");
}

Pose2 random_pose_in_bounds(const ConvexHull& hull, Vec2 bounds, Rng& rng, int max_tries) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const Pose2 rot(angle, {});
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const Point2& v : hull.vertices) {
      const Point2 p = rot.apply(v);
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    // Draw the translation from the range that keeps the bounding box inside.
    const double tx_lo = -x0, tx_hi = bounds.x - x1;
    const double ty_lo = -y0, ty_hi = bounds.y - y1;
    const double tx = rng.uniform(tx_lo, tx_hi);
    const double ty = rng.uniform(ty_lo, ty_hi);
    if (!(tx_hi > tx_lo) || !(ty_hi > ty_lo)) continue;
    const Pose2 pose(angle, {tx, ty});
    const bool inside = std::all_of(hull.vertices.begin(), hull.vertices.end(), [&](Point2 v) {
      const Point2 p = pose.apply(v);
      return p.x > 0.0 && p.y > 0.0 && p.x < bounds.x && p.y < bounds.y;
    });
    if (inside) return pose;
  }
  throw TimesExceeded("no pose fits the hull inside the bounds");
}

std::vector<Obstacle> scatter_filler_obstacles(std::span<const Point2> posed_path, double c, Vec2 bounds,
                                               Rng& rng, int max_total, double radius_min,
                                               double radius_max) {
  std::vector<Obstacle> kept;
  for (int i = 0; i < max_total; ++i) {
    Obstacle o;
    o.center = {rng.uniform(0.0, bounds.x), rng.uniform(0.0, bounds.y)};
    o.radius = rng.uniform(radius_min, radius_max);
    o.role = ObstacleRole::Filler;
    if (collision_free(posed_path, o, c)) kept.push_back(o);
  }
  return kept;
}

RgbImage encode_problem_image(const SceneSpec& scene, const RasterConfig& raster, int marker_side,
                              const RasterMask* clear) {
  RgbImage img(raster.width, raster.height, kFree);
  const PixelTransform t = raster.transform();
  for (const Obstacle& o : scene.obstacles) {
    const Point2 lo = t.to_pixel(o.center - Vec2{o.radius, o.radius});
    const Point2 hi = t.to_pixel(o.center + Vec2{o.radius, o.radius});
    const int c0 = std::max(0, static_cast<int>(std::floor(lo.x)));
    const int c1 = std::min(img.width - 1, static_cast<int>(std::floor(hi.x)));
    const int r0 = std::max(0, static_cast<int>(std::floor(lo.y)));
    const int r1 = std::min(img.height - 1, static_cast<int>(std::floor(hi.y)));
    const double r2 = o.radius * o.radius;
    for (int row = r0; row <= r1; ++row)
      for (int col = c0; col <= c1; ++col) {
        const Point2 w = t.pixel_center_world(col, row);
        const Vec2 d = w - o.center;
        if (dot(d, d) <= r2) img.put(col, row, kObstacle);
      }
  }
  if (clear) {
    for (int row = 0; row < img.height; ++row)
      for (int col = 0; col < img.width; ++col)
        if (clear->test(col, row)) img.put(col, row, kFree);
  }
  auto marker = [&](Point2 p) {
    const PixelCoord c = pixel_of(t, p);
    const int first = -(marker_side - 1) / 2;
    for (int dr = 0; dr < marker_side; ++dr)
      for (int dc = 0; dc < marker_side; ++dc) {
        const int col = c.col + first + dc, row = c.row + first + dr;
        if (img.in_bounds(col, row)) img.put(col, row, kMarker);
      }
  };
  marker(scene.start);
  marker(scene.goal);
  return img;
}

ProblemRecord assemble_scene(const PathPolyline& path, const CorridorBoundary& boundary,
                             std::span<const Obstacle> constraint_obstacles, const SceneConfig& cfg,
                             Rng& rng) {
  const Vec2 bounds{cfg.raster.world_width, cfg.raster.world_height};
  const ConvexHull hull = convex_hull(boundary.all_points());
  const Pose2 pose = random_pose_in_bounds(hull, bounds, rng, cfg.pose_tries);

  ProblemRecord rec;
  rec.solution = path.transformed(pose);
  const CorridorBoundary posed_boundary = boundary.transformed(pose);

  SceneSpec& scene = rec.scene;
  scene.bounds = bounds;
  scene.start = rec.solution.start();
  scene.goal = rec.solution.goal();
  scene.pose = pose;
  scene.clearance = boundary.clearance;
  for (Obstacle o : constraint_obstacles) {
    o.center = pose.apply(o.center);
    scene.obstacles.push_back(o);
  }
  const int filler_budget = std::max(0, cfg.max_obstacles - static_cast<int>(scene.obstacles.size()));
  const auto fillers = scatter_filler_obstacles(rec.solution.points, boundary.clearance, bounds, rng,
                                                filler_budget, cfg.filler_radius_min, cfg.filler_radius_max);
  scene.obstacles.insert(scene.obstacles.end(), fillers.begin(), fillers.end());

  rec.space_mask = rasterize_corridor(posed_boundary, cfg.raster);
  rec.waypoint_mask = rasterize_waypoints(rec.solution, cfg.raster);
  rec.problem_image = encode_problem_image(scene, cfg.raster, cfg.marker_side, &rec.space_mask);
  rec.solution_cost = polyline_length(rec.solution.points);
  return rec;
}

double optimality_ratio(const PathPolyline& path, std::span<const Obstacle> obstacles, double c) {
  std::vector<Disc> discs;
  discs.reserve(obstacles.size());
  for (const Obstacle& o : obstacles) discs.push_back({o.center, o.radius + c});
  return tangent_graph_shortest(path.start(), path.goal(), discs) / path.length();
}

PathBatch generate_path_records(const GeneratorConfig& cfg, int path_index) {
  PathBatch batch;
  batch.path_index = path_index;
  const double c = cfg.scene.clearance;
  for (int attempt = 0; attempt < cfg.max_path_attempts; ++attempt) {
    batch.attempts = attempt + 1;
    batch.records.clear();
    try {
      Rng path_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(path_index), attempt, 0));
      const PathPolyline path = generate_path(cfg.path, path_rng);
      const CorridorBoundary boundary = calcu_boundary(path, c, cfg.path.cap_samples);
      PlacementStats stats;
      const auto constraint_obs = set_obstacles(path, c, path_rng, cfg.constraints, &stats);
      if (stats.truncated || static_cast<int>(constraint_obs.size()) > cfg.scene.max_obstacles)
        throw GenerationFailed("constraint obstacles exceed the per-problem cap");
      if (cfg.min_optimality > 0.0 && optimality_ratio(path, constraint_obs, c) < cfg.min_optimality) {
        ++batch.optimality_rejections;
        throw GenerationFailed("path is not near-optimal around its constraint obstacles");
      }
      for (int i = 0; i < cfg.per_path; ++i) {
        const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(path_index), attempt, 1 + i);
        Rng rec_rng(seed);
        ProblemRecord rec = assemble_scene(path, boundary, constraint_obs, cfg.scene, rec_rng);
        rec.id = static_cast<std::uint64_t>(path_index) * cfg.per_path + i;
        rec.seed = seed;
        batch.records.push_back(std::move(rec));
      }
      batch.failure.reset();
      return batch;
    } catch (const TimesExceeded& e) {
      batch.failure = e.what();
    } catch (const GenerationFailed& e) {
      batch.failure = e.what();
    } catch (const OutOfRaster& e) {
      batch.failure = e.what();
    }
  }
  batch.records.clear();
  return batch;
}

}  // namespace edagepp
