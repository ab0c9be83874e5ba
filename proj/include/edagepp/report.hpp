#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edagepp/planners.hpp"
#include "edagepp/scene.hpp"

namespace edagepp {

inline constexpr const char* kBenchSchema = "bench-v1";

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};
MeanStd mean_std(std::span<const double> xs);

struct BenchConfig {
  PlannerKind planner = PlannerKind::RrtStar;
  std::vector<double> margins{0.0, 0.02, 0.05};
  PlannerConfig planner_cfg;  // max_time is the per-run budget
  bool oracle = true;
  int oracle_resolution = 128;
  std::uint64_t seed = 7;
};

struct BenchRun {
  bool success = false;
  double seconds = 0.0;
  double cost = 0.0;  // best cost found, +inf when none
};

struct BenchEntry {
  std::uint64_t id = 0;
  double solution_cost = 0.0;
  double oracle_cost = 0.0;  // grid oracle, 0 when disabled
  std::vector<BenchRun> runs;  // one per margin
};

struct MarginStats {
  double margin = 0.0;
  int runs = 0;
  int successes = 0;
  MeanStd time;  // over all runs, failures at the time they used
  MeanStd cost;  // over successful runs
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchEntry> entries;
  std::vector<MarginStats> stats;
  int oracle_checked = 0;
  int oracle_within = 0;  // oracle >= 0.90 * solution_cost
};

// For each record and margin, run_until_cost against solution_cost.
BenchReport bench_records(std::span<const ProblemRecord> records, const BenchConfig& cfg, int workers);
nlohmann::json to_json(const BenchReport& r);
std::string format_table(const BenchReport& r);

// Start/goal at least min_separation apart and `obstacle_count` random discs
// that keep radius + c away from both. Used by the RRT*-based pipeline.
SceneSpec random_problem(Rng& rng, Vec2 bounds, double c, int obstacle_count, double min_separation = 40.0,
                         double radius_min = 1.0, double radius_max = 6.0);

struct TimingConfig {
  int count = 100;
  GeneratorConfig generator;
  PlannerConfig planner;  // max_time is the per-problem budget
  double margin = 0.05;
  int random_obstacles = 40;
  int max_attempts_factor = 5;  // RRT* pipeline gives up after count * this problems
  std::uint64_t seed = 11;
};

struct PipelineStats {
  double seconds = 0.0;
  int produced = 0;
  int attempts = 0;
  MeanStd cost;
};

struct TimingReport {
  int count = 0;
  PipelineStats generator;
  PipelineStats rrt;
  // Seconds per produced record, RRT* over generator; NaN when count == 0.
  double ratio = 0.0;
};

// Both pipelines single threaded. The RRT* pipeline draws random problems,
// runs rrt_star until within margin of the exact continuous optimum, renders
// the problem and solution rasters, and retries unsolved problems.
TimingReport timing_compare(const TimingConfig& cfg);
nlohmann::json to_json(const TimingReport& r);
std::string format_table(const TimingReport& r);

}  // namespace edagepp
