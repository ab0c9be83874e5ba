#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "edagepp/geom.hpp"
#include "edagepp/pathgen.hpp"
#include "edagepp/rng.hpp"

namespace edagepp {

enum class ObstacleRole { Constraint, Filler };

std::string_view to_string(ObstacleRole role);
ObstacleRole obstacle_role_from_string(std::string_view s);

struct Obstacle {
  double radius = 1.0;
  Point2 center{};
  ObstacleRole role = ObstacleRole::Filler;
  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

// A concave pocket between the path and one long edge (h_f, h_g) of the
// path's convex hull.
struct Subspace {
  std::vector<Point2> boundary;      // waypoints strictly between u and v
  std::vector<int> boundary_indices;
  Point2 anchor_f{};
  Point2 anchor_g{};
  int index_u = 0;  // waypoint index of anchor_f
  int index_v = 0;  // waypoint index of anchor_g
  Vec2 dir_z{};
  Vec2 dir_n{};
  double width = 0.0;
  int deepest = -1;  // index into boundary of the point defining width
};

struct SubspaceFrame {
  Vec2 dir_z{};  // along the hull chord
  Vec2 dir_n{};  // perpendicular, pointing into the pocket
  double width = 0.0;
  int deepest = -1;
};

// Paper: chain from the hull chord midpoint into the pocket, random radii,
// colliding circles rejected. Wall: chain from the deepest pocket waypoint out
// through the chord, colliding circles shrunk to fit.
enum class ChainMode { Paper, Wall };

struct ConstraintConfig {
  double gap_factor = 3.0;      // gap threshold in units of waypoint spacing
  int max_rejections = 100;     // consecutive rejections before a pocket is skipped
  int max_obstacles = 50;       // hard cap on constraint obstacles per path
  ChainMode mode = ChainMode::Wall;
  double min_radius = 0.5;      // wall mode: smallest circle worth keeping
  double wall_slack = 0.1;      // wall mode: extra gap left to the clearance band
};

struct PlacementStats {
  int subspaces = 0;
  int completed = 0;
  int stalled = 0;
  bool truncated = false;  // stopped at max_obstacles
};

// One subspace per adjacent hull-vertex pair (cyclic) farther apart than
// gap_threshold. A fully collinear path has no subspaces.
std::vector<Subspace> find_subspaces(const PathPolyline& path, double gap_threshold);

// Throws DegenerateSubspace when the anchors coincide or the pocket is empty.
SubspaceFrame subspace_frame(const Subspace& s);

// True iff the obstacle surface stays at least c away from the polyline.
bool collision_free(std::span<const Point2> path, const Obstacle& obstacle, double c);
bool collision_free(const PathPolyline& path, const Obstacle& obstacle, double c);

// Places a chain of circles in each pocket (see ChainMode) that leaves
// clearance c to the path. Paper mode stops once the kept diameters add up
// to twice the pocket width, wall mode once the chain reaches 2w beyond the
// deepest waypoint.
std::vector<Obstacle> place_constraint_obstacles(const PathPolyline& path, double c,
                                                 std::span<const Subspace> subspaces, Rng& rng,
                                                 const ConstraintConfig& cfg = {},
                                                 PlacementStats* stats = nullptr);

// find_subspaces + place_constraint_obstacles with the default gap threshold.
std::vector<Obstacle> set_obstacles(const PathPolyline& path, double c, Rng& rng,
                                    const ConstraintConfig& cfg = {}, PlacementStats* stats = nullptr);

}  // namespace edagepp
