#include "edagepp/planners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <queue>

#include "edagepp/error.hpp"
#include "edagepp/rng.hpp"

namespace edagepp {

std::string_view to_string(PlannerStatus s) {
  switch (s) {
    case PlannerStatus::Solved: return "solved";
    case PlannerStatus::NoSolution: return "no-solution";
    case PlannerStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::string_view to_string(PlannerKind k) {
  return k == PlannerKind::RrtStar ? "rrt-star" : "irrt-star";
}

PlannerKind planner_kind_from_string(std::string_view s) {
  if (s == "rrt-star") return PlannerKind::RrtStar;
  if (s == "irrt-star") return PlannerKind::InformedRrtStar;
  throw ConfigError("unknown planner '" + std::string(s) + "'");
}

void PlannerConfig::validate() const {
  if (!(step_size > 0.0)) throw ConfigError("step_size must be positive");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) throw ConfigError("goal_bias must be in [0, 1]");
  if (!(rewire_gamma > 0.0) || !(rewire_cap_steps > 0.0)) throw ConfigError("rewire parameters must be positive");
  if (!(clearance >= 0.0)) throw ConfigError("clearance must be >= 0");
  if (!(max_time > 0.0)) throw ConfigError("max_time must be positive");
  if (max_iterations <= 0 && !std::isfinite(max_time)) throw ConfigError("planner needs a finite budget");
}

bool segment_free(const SceneSpec& scene, Point2 a, Point2 b, double c) {
  if (!scene.inside_bounds(a) || !scene.inside_bounds(b)) return false;
  const double x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x);
  const double y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
  for (const Obstacle& o : scene.obstacles) {
    const double reach = o.radius + c;
    if (o.center.x + reach < x0 || o.center.x - reach > x1 || o.center.y + reach < y0 || o.center.y - reach > y1)
      continue;
    if (point_segment_distance(o.center, a, b) < reach) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

// Uniform bucket grid over the scene bounds for neighbour queries.
class NodeIndex {
public:
  NodeIndex(Vec2 bounds, double cell) : cell_(cell) {
    nx_ = std::max(1, static_cast<int>(std::ceil(bounds.x / cell)));
    ny_ = std::max(1, static_cast<int>(std::ceil(bounds.y / cell)));
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  }

  void insert(int id, Point2 p) { buckets_[bucket(cx(p.x), cy(p.y))].push_back(id); }

  int nearest(Point2 p, const std::vector<Point2>& pts) const {
    const int px = cx(p.x), py = cy(p.y);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_);
    for (int k = 0; k <= max_ring; ++k) {
      for (int y = py - k; y <= py + k; ++y) {
        if (y < 0 || y >= ny_) continue;
        const bool edge_row = (y == py - k || y == py + k);
        for (int x = px - k; x <= px + k; x += (edge_row ? 1 : 2 * k)) {
          if (x >= 0 && x < nx_)
            for (int id : buckets_[bucket(x, y)]) {
              const Vec2 d = pts[id] - p;
              const double d2 = dot(d, d);
              if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
                best_d2 = d2;
                best = id;
              }
            }
          if (k == 0) break;
        }
      }
      if (best >= 0 && std::sqrt(best_d2) <= k * cell_) break;
    }
    return best;
  }

  void within(Point2 p, double r, const std::vector<Point2>& pts, std::vector<int>& out) const {
    out.clear();
    const int x0 = cx(p.x - r), x1 = cx(p.x + r), y0 = cy(p.y - r), y1 = cy(p.y + r);
    const double r2 = r * r;
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        for (int id : buckets_[bucket(x, y)]) {
          const Vec2 d = pts[id] - p;
          if (dot(d, d) <= r2) out.push_back(id);
        }
    std::sort(out.begin(), out.end());
  }

private:
  int cx(double x) const { return std::clamp(static_cast<int>(std::floor(x / cell_)), 0, nx_ - 1); }
  int cy(double y) const { return std::clamp(static_cast<int>(std::floor(y / cell_)), 0, ny_ - 1); }
  std::size_t bucket(int x, int y) const { return static_cast<std::size_t>(y) * nx_ + x; }

  double cell_;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

double free_area(const SceneSpec& scene, double c) {
  const double total = scene.bounds.x * scene.bounds.y;
  double blocked = 0.0;
  for (const Obstacle& o : scene.obstacles) blocked += std::numbers::pi * (o.radius + c) * (o.radius + c);
  return std::max(0.1 * total, total - blocked);
}

struct Tree {
  std::vector<Point2> pts;
  std::vector<int> parent;
  std::vector<double> cost;
  std::vector<std::vector<int>> children;

  int add(Point2 p, int par, double c) {
    const int id = static_cast<int>(pts.size());
    pts.push_back(p);
    parent.push_back(par);
    cost.push_back(c);
    children.emplace_back();
    if (par >= 0) children[par].push_back(id);
    return id;
  }

  void reparent(int id, int new_parent, double new_cost) {
    auto& sib = children[parent[id]];
    sib.erase(std::find(sib.begin(), sib.end(), id));
    parent[id] = new_parent;
    children[new_parent].push_back(id);
    const double delta = new_cost - cost[id];
    std::vector<int> stack{id};
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      cost[n] += delta;
      for (int ch : children[n]) stack.push_back(ch);
    }
  }

  std::vector<Point2> path_to(int id) const {
    std::vector<Point2> out;
    for (int n = id; n >= 0; n = parent[n]) out.push_back(pts[n]);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

PlannerResult plan(const SceneSpec& scene, const PlannerConfig& cfg, bool informed, const StopPredicate& stop) {
  cfg.validate();
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  PlannerResult res;
  const double c = cfg.clearance;
  const Point2 start = scene.start, goal = scene.goal;
  if (!segment_free(scene, start, start, c) || !segment_free(scene, goal, goal, c)) {
    res.elapsed = elapsed();
    return res;
  }

  Rng rng(cfg.seed);
  Tree tree;
  tree.add(start, -1, 0.0);
  NodeIndex index(scene.bounds, cfg.step_size);
  index.insert(0, start);

  const double gamma = cfg.rewire_gamma * std::sqrt(1.5 * free_area(scene, c) / std::numbers::pi);
  const double radius_cap = cfg.step_size * cfg.rewire_cap_steps;
  const double goal_radius = cfg.step_size;
  const double c_min = distance(start, goal);
  const Point2 centre = (start + goal) * 0.5;
  const double axis_angle = std::atan2(goal.y - start.y, goal.x - start.x);

  std::vector<int> goal_nodes;  // nodes with a free straight connection to the goal
  double best = std::numeric_limits<double>::infinity();
  int best_node = -1;

  auto refresh_best = [&]() {
    for (int g : goal_nodes) {
      const double total = tree.cost[g] + distance(tree.pts[g], goal);
      if (total < best || (total == best && g < best_node)) {
        best = total;
        best_node = g;
      }
    }
  };

  auto sample = [&]() -> Point2 {
    if (rng.uniform() < cfg.goal_bias) return goal;
    if (informed && std::isfinite(best) && best > c_min) {
      const double a = 0.5 * best;
      const double b = 0.5 * std::sqrt(best * best - c_min * c_min);
      for (int tries = 0; tries < 100; ++tries) {
        const double rho = std::sqrt(rng.uniform());
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Point2 p = centre + rotate({a * rho * std::cos(phi), b * rho * std::sin(phi)}, axis_angle);
        if (scene.inside_bounds(p)) return p;
      }
    }
    return {rng.uniform(0.0, scene.bounds.x), rng.uniform(0.0, scene.bounds.y)};
  };

  if (segment_free(scene, start, goal, c) && c_min <= goal_radius) {
    goal_nodes.push_back(0);
    refresh_best();
    res.trace.push_back({0, elapsed(), best});
  }

  std::vector<int> near;
  std::vector<std::pair<double, int>> order;
  long it = 0;
  bool stopped = stop && std::isfinite(best) && stop(best);
  while (!stopped) {
    if (cfg.max_iterations > 0 && it >= cfg.max_iterations) break;
    if (std::isfinite(cfg.max_time) && (it & 63) == 0 && elapsed() >= cfg.max_time) break;
    ++it;

    const bool was_solved = std::isfinite(best);
    const double best_at_sample = best;
    const Point2 rnd = sample();
    if (informed && was_solved && cfg.record_samples) res.informed_samples.push_back({rnd, best_at_sample});

    const int nearest = index.nearest(rnd, tree.pts);
    Point2 x_new = rnd;
    const double d = distance(tree.pts[nearest], rnd);
    if (d > cfg.step_size) x_new = tree.pts[nearest] + (rnd - tree.pts[nearest]) * (cfg.step_size / d);
    if (d == 0.0) continue;
    if (!segment_free(scene, tree.pts[nearest], x_new, c)) continue;

    const double n = static_cast<double>(tree.pts.size() + 1);
    const double r = std::min(gamma * std::sqrt(std::log(n) / n), radius_cap);
    index.within(x_new, std::max(r, 1e-12), tree.pts, near);

    order.clear();
    for (int id : near) order.emplace_back(tree.cost[id] + distance(tree.pts[id], x_new), id);
    std::sort(order.begin(), order.end());
    int parent = nearest;
    double parent_cost = tree.cost[nearest] + distance(tree.pts[nearest], x_new);
    for (const auto& [cand_cost, id] : order) {
      if (cand_cost >= parent_cost) break;
      if (segment_free(scene, tree.pts[id], x_new, c)) {
        parent = id;
        parent_cost = cand_cost;
        break;
      }
    }
    const int id_new = tree.add(x_new, parent, parent_cost);
    index.insert(id_new, x_new);

    for (int id : near) {
      if (id == parent) continue;
      const double via = tree.cost[id_new] + distance(x_new, tree.pts[id]);
      if (via < tree.cost[id] && segment_free(scene, x_new, tree.pts[id], c)) tree.reparent(id, id_new, via);
    }

    if (distance(x_new, goal) <= goal_radius && segment_free(scene, x_new, goal, c)) goal_nodes.push_back(id_new);
    const double before = best;
    refresh_best();
    if (best < before) {
      res.trace.push_back({it, elapsed(), best});
      if (stop && stop(best)) stopped = true;
    }
  }

  res.iterations = it;
  res.tree_size = tree.pts.size();
  res.elapsed = elapsed();
  res.best_cost = best;
  if (best_node >= 0) {
    std::vector<Point2> path = tree.path_to(best_node);
    if (path.back() != goal) path.push_back(goal);
    res.cost = polyline_length(path);
    res.best_cost = res.cost;
    res.path = std::move(path);
    res.success = true;
    res.status = PlannerStatus::Solved;
  }
  return res;
}

}  // namespace

PlannerResult rrt_star(const SceneSpec& scene, const PlannerConfig& cfg, const StopPredicate& stop) {
  return plan(scene, cfg, false, stop);
}

PlannerResult informed_rrt_star(const SceneSpec& scene, const PlannerConfig& cfg, const StopPredicate& stop) {
  return plan(scene, cfg, true, stop);
}

PlannerResult run_planner(PlannerKind kind, const SceneSpec& scene, const PlannerConfig& cfg,
                          const StopPredicate& stop) {
  return plan(scene, cfg, kind == PlannerKind::InformedRrtStar, stop);
}

PlannerResult run_until_cost(PlannerKind kind, const SceneSpec& scene, double target_cost, double margin,
                             const PlannerConfig& cfg) {
  if (!(margin >= 0.0)) throw ConfigError("margin must be >= 0");
  const double threshold = target_cost * (1.0 + margin);
  PlannerResult res = run_planner(kind, scene, cfg, [&](double best) { return best <= threshold; });
  if (res.success && res.cost <= threshold) {
    if (!res.trace.empty()) res.elapsed = res.trace.back().elapsed;
    return res;
  }
  res.path.reset();
  res.cost = std::numeric_limits<double>::infinity();
  res.success = false;
  res.status = PlannerStatus::BudgetExhausted;
  if (std::isfinite(cfg.max_time)) res.elapsed = cfg.max_time;
  return res;
}

OracleResult grid_dijkstra_oracle_path(const SceneSpec& scene, double c, int resolution) {
  if (resolution < 2) throw ConfigError("oracle resolution must be >= 2");
  const int res = resolution;
  const double hx = scene.bounds.x / res, hy = scene.bounds.y / res;
  const auto n_cells = static_cast<std::size_t>(res) * res;
  auto centre = [&](int i, int j) { return Point2{(i + 0.5) * hx, (j + 0.5) * hy}; };

  std::vector<std::uint8_t> blocked(n_cells, 0);
  for (const Obstacle& o : scene.obstacles) {
    const double reach = o.radius + c;
    const int i0 = std::max(0, static_cast<int>(std::floor((o.center.x - reach) / hx)));
    const int i1 = std::min(res - 1, static_cast<int>(std::floor((o.center.x + reach) / hx)));
    const int j0 = std::max(0, static_cast<int>(std::floor((o.center.y - reach) / hy)));
    const int j1 = std::min(res - 1, static_cast<int>(std::floor((o.center.y + reach) / hy)));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (distance(centre(i, j), o.center) < reach) blocked[static_cast<std::size_t>(j) * res + i] = 1;
  }

  // Node ids: cells, then the goal.
  const std::size_t goal_id = n_cells;
  constexpr std::size_t kFromStart = std::numeric_limits<std::size_t>::max();
  std::vector<double> dist(n_cells + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n_cells + 1, kFromStart);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

  auto attach = [&](Point2 p, auto&& visit) {
    const int pi = std::clamp(static_cast<int>(std::floor(p.x / hx)), 0, res - 1);
    const int pj = std::clamp(static_cast<int>(std::floor(p.y / hy)), 0, res - 1);
    for (int j = std::max(0, pj - 2); j <= std::min(res - 1, pj + 2); ++j)
      for (int i = std::max(0, pi - 2); i <= std::min(res - 1, pi + 2); ++i) {
        const std::size_t id = static_cast<std::size_t>(j) * res + i;
        if (!blocked[id] && segment_free(scene, p, centre(i, j), c)) visit(id, distance(p, centre(i, j)));
      }
  };

  if (segment_free(scene, scene.start, scene.goal, c)) dist[goal_id] = distance(scene.start, scene.goal);
  attach(scene.start, [&](std::size_t id, double d) {
    if (d < dist[id]) {
      dist[id] = d;
      prev[id] = kFromStart;
      pq.emplace(d, id);
    }
  });
  std::vector<double> goal_link(n_cells, -1.0);
  attach(scene.goal, [&](std::size_t id, double d) { goal_link[id] = d; });
  if (std::isfinite(dist[goal_id])) pq.emplace(dist[goal_id], goal_id);

  const double diag = std::hypot(hx, hy);
  const int di[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  const int dj[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  while (!pq.empty()) {
    const auto [d, id] = pq.top();
    pq.pop();
    if (d > dist[id]) continue;
    if (id == goal_id) break;
    if (goal_link[id] >= 0.0 && d + goal_link[id] < dist[goal_id]) {
      dist[goal_id] = d + goal_link[id];
      prev[goal_id] = id;
      pq.emplace(dist[goal_id], goal_id);
    }
    const int i = static_cast<int>(id % res), j = static_cast<int>(id / res);
    for (int k = 0; k < 8; ++k) {
      const int ni = i + di[k], nj = j + dj[k];
      if (ni < 0 || nj < 0 || ni >= res || nj >= res) continue;
      const std::size_t nid = static_cast<std::size_t>(nj) * res + ni;
      if (blocked[nid]) continue;
      const double step = (di[k] != 0 && dj[k] != 0) ? diag : (di[k] != 0 ? hx : hy);
      if (d + step < dist[nid]) {
        dist[nid] = d + step;
        prev[nid] = id;
        pq.emplace(dist[nid], nid);
      }
    }
  }
  OracleResult out;
  out.cost = dist[goal_id];
  if (!std::isfinite(out.cost)) return out;
  out.path.push_back(scene.goal);
  for (std::size_t id = prev[goal_id]; id != kFromStart; id = prev[id])
    out.path.push_back(centre(static_cast<int>(id % res), static_cast<int>(id / res)));
  out.path.push_back(scene.start);
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

double grid_dijkstra_oracle(const SceneSpec& scene, double c, int resolution) {
  return grid_dijkstra_oracle_path(scene, c, resolution).cost;
}

double continuous_oracle(const SceneSpec& scene, double c) {
  std::vector<Disc> discs;
  discs.reserve(scene.obstacles.size());
  for (const Obstacle& o : scene.obstacles) discs.push_back({o.center, o.radius + c});
  return tangent_graph_shortest(scene.start, scene.goal, discs);
}

}  // namespace edagepp
