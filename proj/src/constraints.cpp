#include "edagepp/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "edagepp/error.hpp"

namespace edagepp {

std::string_view to_string(ObstacleRole role) {
  return role == ObstacleRole::Constraint ? "constraint" : "filler";
}

ObstacleRole obstacle_role_from_string(std::string_view s) {
  if (s == "constraint") return ObstacleRole::Constraint;
  if (s == "filler") return ObstacleRole::Filler;
  throw CorruptRecord("unknown obstacle role '" + std::string(s) + "'");
}

SubspaceFrame subspace_frame(const Subspace& s) {
  const Vec2 chord = s.anchor_f - s.anchor_g;
  const double len = norm(chord);
  if (!(len > 0.0)) throw DegenerateSubspace("hull anchors coincide");
  if (s.boundary.empty()) throw DegenerateSubspace("pocket has no boundary points");

  SubspaceFrame f;
  f.dir_z = chord / len;
  f.dir_n = {f.dir_z.y, -f.dir_z.x};
  Point2 mean{};
  for (const Point2& p : s.boundary) mean += p;
  mean = mean / static_cast<double>(s.boundary.size());
  const Point2 mid = (s.anchor_f + s.anchor_g) * 0.5;
  if (dot(mean - mid, f.dir_n) < 0.0) {
    f.dir_z = -f.dir_z;
    f.dir_n = -f.dir_n;
  }
  std::vector<double> depth(s.boundary.size());
  for (std::size_t i = 0; i < s.boundary.size(); ++i) {
    depth[i] = std::abs(dot(s.boundary[i] - s.anchor_f, f.dir_n));
    f.width = std::max(f.width, depth[i]);
  }
  // a flat bottom ties many points; take the middle of the first tied run
  const double tol = 1e-9 * std::max(1.0, f.width);
  std::size_t first = 0;
  while (depth[first] < f.width - tol) ++first;
  std::size_t last = first;
  while (last + 1 < depth.size() && depth[last + 1] >= f.width - tol) ++last;
  f.deepest = static_cast<int>((first + last) / 2);
  return f;
}

std::vector<Subspace> find_subspaces(const PathPolyline& path, double gap_threshold) {
  std::vector<Subspace> out;
  ConvexHull hull;
  try {
    hull = convex_hull(path.points);
  } catch (const DegenerateInput&) {
    return out;
  }
  const std::size_t m = hull.size();
  for (std::size_t f = 0; f < m; ++f) {
    const std::size_t g = (f + 1 == m) ? 0 : f + 1;
    if (distance(hull.vertices[f], hull.vertices[g]) <= gap_threshold) continue;
    Subspace s;
    s.anchor_f = hull.vertices[f];
    s.anchor_g = hull.vertices[g];
    s.index_u = hull.source_indices[f];
    s.index_v = hull.source_indices[g];
    const int lo = std::min(s.index_u, s.index_v), hi = std::max(s.index_u, s.index_v);
    for (int i = lo + 1; i < hi; ++i) {
      s.boundary.push_back(path.points[i]);
      s.boundary_indices.push_back(i);
    }
    try {
      const SubspaceFrame fr = subspace_frame(s);
      s.dir_z = fr.dir_z;
      s.dir_n = fr.dir_n;
      s.width = fr.width;
      s.deepest = fr.deepest;
    } catch (const DegenerateSubspace&) {
      continue;
    }
    // pockets whose points all lie on the hull edge have width 0 up to rounding
    if (s.width > 1e-9) out.push_back(std::move(s));
  }
  return out;
}

bool collision_free(std::span<const Point2> path, const Obstacle& obstacle, double c) {
  return point_polyline_distance(obstacle.center, path) >= obstacle.radius + c;
}

bool collision_free(const PathPolyline& path, const Obstacle& obstacle, double c) {
  return collision_free(path.points, obstacle, c);
}

namespace {

struct ChainState {
  Point2 prev_center{};
  double prev_radius = 0.0;
  bool first = true;
};

// Alg. 3 as written: march from the chord midpoint into the pocket and keep
// the circles that happen to be collision free.
std::optional<Obstacle> paper_candidate(const PathPolyline& path, double c, const Subspace& s,
                                        const ChainState& st, Rng& rng) {
  const double radius = 2.0 * s.width * rng.uniform_open_closed();
  const double eps_n = rng.uniform_open_closed();
  const double eps_z = rng.uniform(-1.0, 1.0);
  const double t_n = st.first ? c : eps_n * (radius + st.prev_radius);
  const Obstacle o{radius, st.prev_center + s.dir_n * t_n + s.dir_z * (eps_z * radius), ObstacleRole::Constraint};
  if (!collision_free(path, o, c)) return std::nullopt;
  return o;
}

// Wall variant: march from the deepest pocket waypoint out through the hull
// chord. A circle that would touch the clearance band is shrunk and moved
// back along the chain until it fits.
std::optional<Obstacle> wall_candidate(const PathPolyline& path, double c, const Subspace& s,
                                       const ChainState& st, Rng& rng, double min_radius, double slack) {
  double radius = 2.0 * s.width * rng.uniform_open_closed();
  const double eps_n = rng.uniform_open_closed();
  const double eps_z = rng.uniform(-1.0, 1.0);
  const Vec2 out_dir = -s.dir_n;
  Point2 center{};
  for (int settle = 0; settle < 8; ++settle) {
    const double t_n = st.first ? radius + c : eps_n * (radius + st.prev_radius);
    center = st.prev_center + out_dir * t_n + s.dir_z * (eps_z * radius);
    const double room = point_polyline_distance(center, path.points) - c - slack;
    if (room >= radius) break;
    radius = room;
    if (radius < min_radius) return std::nullopt;
  }
  const Obstacle o{radius, center, ObstacleRole::Constraint};
  if (radius < min_radius || !collision_free(path, o, c)) return std::nullopt;
  return o;
}

}  // namespace

std::vector<Obstacle> place_constraint_obstacles(const PathPolyline& path, double c,
                                                 std::span<const Subspace> subspaces, Rng& rng,
                                                 const ConstraintConfig& cfg, PlacementStats* stats) {
  if (!(c > 0.0)) throw InvalidClearance("clearance must be positive");
  PlacementStats local;
  std::vector<Obstacle> out;
  const bool wall = cfg.mode == ChainMode::Wall;
  for (const Subspace& s : subspaces) {
    ++local.subspaces;
    const double target = 2.0 * s.width;
    ChainState st;
    st.prev_center = (s.anchor_f + s.anchor_g) * 0.5;
    const Point2 origin = (wall && s.deepest >= 0) ? s.boundary[s.deepest] : st.prev_center;
    if (wall) st.prev_center = origin;
    double covered = 0.0;  // paper: sum of diameters; wall: reach beyond origin
    int rejections = 0;
    bool stalled = false;
    while (covered < target) {
      if (static_cast<int>(out.size()) >= cfg.max_obstacles) {
        local.truncated = true;
        break;
      }
      const auto o = wall ? wall_candidate(path, c, s, st, rng, cfg.min_radius, cfg.wall_slack) : paper_candidate(path, c, s, st, rng);
      if (!o) {
        if (++rejections >= cfg.max_rejections) {
          stalled = true;
          break;
        }
        continue;
      }
      out.push_back(*o);
      st.prev_center = o->center;
      st.prev_radius = o->radius;
      st.first = false;
      rejections = 0;
      if (wall)
        covered = std::max(covered, dot(o->center - origin, -s.dir_n) + o->radius);
      else
        covered += 2.0 * o->radius;
    }
    if (local.truncated) break;
    if (stalled) ++local.stalled; else ++local.completed;
  }
  if (stats) *stats = local;
  return out;
}

std::vector<Obstacle> set_obstacles(const PathPolyline& path, double c, Rng& rng, const ConstraintConfig& cfg,
                                    PlacementStats* stats) {
  const auto subspaces = find_subspaces(path, cfg.gap_factor * path.spacing);
  return place_constraint_obstacles(path, c, subspaces, rng, cfg, stats);
}

}  // namespace edagepp
