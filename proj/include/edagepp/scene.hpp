#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edagepp/constraints.hpp"
#include "edagepp/corridor.hpp"
#include "edagepp/geom.hpp"
#include "edagepp/pathgen.hpp"
#include "edagepp/raster.hpp"
#include "edagepp/rng.hpp"
#include "edagepp/tangent_graph.hpp"

namespace edagepp {

struct SceneConfig {
  RasterConfig raster;
  double clearance = 3.0;
  double filler_radius_min = 1.0;
  double filler_radius_max = 6.0;
  int max_obstacles = 50;
  int marker_side = 5;  // pixels
  int pose_tries = 100;

  void validate() const;
};

// A planning problem: bounds [0, width] x [0, height], start, goal and
// circular obstacles that must be avoided with clearance c.
struct SceneSpec {
  Vec2 bounds{64.0, 64.0};
  Point2 start{};
  Point2 goal{};
  std::vector<Obstacle> obstacles;
  Pose2 pose;  // pose applied to the generated path
  double clearance = 0.0;

  bool inside_bounds(Point2 p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= bounds.x && p.y <= bounds.y;
  }
};

struct ProblemRecord {
  std::uint64_t id = 0;
  std::uint64_t seed = 0;
  SceneSpec scene;
  RgbImage problem_image;
  RasterMask space_mask;
  RasterMask waypoint_mask;
  PathPolyline solution;
  double solution_cost = 0.0;
};

// Random rotation and translation under which every hull vertex lies
// strictly inside [0, width] x [0, height]. Throws TimesExceeded.
Pose2 random_pose_in_bounds(const ConvexHull& hull, Vec2 bounds, Rng& rng, int max_tries);

// Draws max_total random circles and keeps those at clearance c from the path.
std::vector<Obstacle> scatter_filler_obstacles(std::span<const Point2> posed_path, double c, Vec2 bounds,
                                               Rng& rng, int max_total, double radius_min = 1.0,
                                               double radius_max = 6.0);

// White free space, black obstacle discs, red start/goal squares. Pixels set
// in `clear` are forced free before the markers are drawn.
RgbImage encode_problem_image(const SceneSpec& scene, const RasterConfig& raster, int marker_side = 5,
                              const RasterMask* clear = nullptr);

// Poses the path, its corridor and constraint obstacles, adds fillers and
// renders the record. Throws TimesExceeded when no pose fits.
ProblemRecord assemble_scene(const PathPolyline& path, const CorridorBoundary& boundary,
                             std::span<const Obstacle> constraint_obstacles, const SceneConfig& cfg,
                             Rng& rng);

struct GeneratorConfig {
  PathGenConfig path;
  ConstraintConfig constraints;
  SceneConfig scene;
  int paths = 250;      // n_P
  int per_path = 4;     // n_I
  std::uint64_t seed = 42;
  int max_path_attempts = 20;
  // A path is discarded when the exact shortest route around its constraint
  // obstacles (inflated by c) is shorter than this fraction of the path.
  // Fillers and bounds can only lengthen that route. 0 disables the check.
  double min_optimality = 0.92;

  void validate() const;
};

struct PathBatch {
  int path_index = 0;
  int attempts = 0;
  int optimality_rejections = 0;
  std::vector<ProblemRecord> records;
  std::optional<std::string> failure;
};

// Exact shortest start-goal route around the obstacles inflated by c,
// divided by the path length.
double optimality_ratio(const PathPolyline& path, std::span<const Obstacle> obstacles, double c);

// Generates the per_path records of one path. Restarts from a new path when
// a pose cannot be found, the constraint chain overflows or the path fails
// the optimality check, up to max_path_attempts times. Depends only on
// (cfg, path_index).
PathBatch generate_path_records(const GeneratorConfig& cfg, int path_index);

}  // namespace edagepp
