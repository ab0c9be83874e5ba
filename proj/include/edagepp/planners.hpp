#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "edagepp/geom.hpp"
#include "edagepp/scene.hpp"
#include "edagepp/tangent_graph.hpp"

namespace edagepp {

enum class PlannerStatus { Solved, NoSolution, BudgetExhausted };
enum class PlannerKind { RrtStar, InformedRrtStar };

std::string_view to_string(PlannerStatus s);
std::string_view to_string(PlannerKind k);
// Accepts "rrt-star" and "irrt-star". Throws ConfigError.
PlannerKind planner_kind_from_string(std::string_view s);

struct PlannerConfig {
  double step_size = 2.0;
  double goal_bias = 0.05;
  double rewire_gamma = 2.0;     // multiple of sqrt(1.5 * free_area / pi)
  double rewire_cap_steps = 5.0; // rewire radius never exceeds step_size * this
  long max_iterations = 5000;    // <= 0: unlimited
  double max_time = std::numeric_limits<double>::infinity();  // seconds
  double clearance = 3.0;
  std::uint64_t seed = 0;
  bool record_samples = false;

  void validate() const;
};

struct CostSample {
  long iteration = 0;
  double elapsed = 0.0;
  double cost = 0.0;
};

// A sample drawn after the first solution together with the best cost at the
// time it was drawn.
struct InformedSample {
  Point2 point{};
  double best_cost = 0.0;
};

struct PlannerResult {
  std::optional<std::vector<Point2>> path;
  double cost = std::numeric_limits<double>::infinity();
  long iterations = 0;
  double elapsed = 0.0;
  bool success = false;
  PlannerStatus status = PlannerStatus::NoSolution;
  // Best cost found even when the run is reported as unsuccessful.
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<CostSample> trace;  // one entry per improvement
  std::vector<InformedSample> informed_samples;  // only with record_samples
  std::size_t tree_size = 0;
};

// Called whenever the best cost improves; returning true stops the run.
using StopPredicate = std::function<bool(double best_cost)>;

PlannerResult rrt_star(const SceneSpec& scene, const PlannerConfig& cfg, const StopPredicate& stop = {});
PlannerResult informed_rrt_star(const SceneSpec& scene, const PlannerConfig& cfg,
                                const StopPredicate& stop = {});
PlannerResult run_planner(PlannerKind kind, const SceneSpec& scene, const PlannerConfig& cfg,
                          const StopPredicate& stop = {});

// Runs until the best cost is <= target_cost * (1 + margin) or the budget in
// cfg runs out. An unmet target gives status BudgetExhausted, success false
// and elapsed equal to the time budget (or the time spent when only the
// iteration budget applies).
PlannerResult run_until_cost(PlannerKind kind, const SceneSpec& scene, double target_cost, double margin,
                             const PlannerConfig& cfg);

// True when segment a-b stays inside the bounds and at least radius + c away
// from every obstacle center.
bool segment_free(const SceneSpec& scene, Point2 a, Point2 b, double c);

// 8-connected Dijkstra over a resolution x resolution grid of cell centers;
// a cell is blocked when its center is closer than radius + c to an obstacle.
// Start and goal connect to free cells within two cells by straight segments.
// Returns +inf when disconnected.
double grid_dijkstra_oracle(const SceneSpec& scene, double c, int resolution = 128);

struct OracleResult {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<Point2> path;  // start, cell centers, goal; empty when disconnected
};

OracleResult grid_dijkstra_oracle_path(const SceneSpec& scene, double c, int resolution = 128);

// tangent_graph_shortest over the scene obstacles inflated by c. Ignores the
// scene bounds, so it never exceeds the bounded optimum.
double continuous_oracle(const SceneSpec& scene, double c);

}  // namespace edagepp
