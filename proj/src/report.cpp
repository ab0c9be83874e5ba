#include "edagepp/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "edagepp/corridor.hpp"
#include "edagepp/error.hpp"
#include "edagepp/pool.hpp"

namespace edagepp {

using nlohmann::json;

int resolve_workers(int requested) {
  if (const char* env = std::getenv("EDAGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

MeanStd mean_std(std::span<const double> xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= xs.size();
  for (double x : xs) out.std += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(out.std / xs.size());
  return out;
}

namespace {

std::string sformat(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

BenchReport bench_records(std::span<const ProblemRecord> records, const BenchConfig& cfg, int workers) {
  cfg.planner_cfg.validate();
  BenchReport rep;
  rep.config = cfg;
  auto run_one = [&](std::size_t i) {
    const ProblemRecord& rec = records[i];
    BenchEntry e;
    e.id = rec.id;
    e.solution_cost = rec.solution_cost;
    const double c = rec.scene.clearance;
    if (cfg.oracle) e.oracle_cost = grid_dijkstra_oracle(rec.scene, c, cfg.oracle_resolution);
    for (std::size_t m = 0; m < cfg.margins.size(); ++m) {
      PlannerConfig pc = cfg.planner_cfg;
      pc.clearance = c;
      pc.seed = derive_seed(cfg.seed, rec.id, m, 3);
      const PlannerResult res = run_until_cost(cfg.planner, rec.scene, rec.solution_cost, cfg.margins[m], pc);
      e.runs.push_back({res.success, res.elapsed, res.best_cost});
    }
    return e;
  };
  ordered_parallel<BenchEntry>(records.size(), workers, run_one,
                               [&](std::size_t, BenchEntry e) { rep.entries.push_back(std::move(e)); });

  for (std::size_t m = 0; m < cfg.margins.size(); ++m) {
    MarginStats s;
    s.margin = cfg.margins[m];
    std::vector<double> times, costs;
    for (const BenchEntry& e : rep.entries) {
      ++s.runs;
      times.push_back(e.runs[m].seconds);
      if (e.runs[m].success) {
        ++s.successes;
        costs.push_back(e.runs[m].cost);
      }
    }
    s.time = mean_std(times);
    s.cost = mean_std(costs);
    rep.stats.push_back(s);
  }
  if (cfg.oracle)
    for (const BenchEntry& e : rep.entries) {
      ++rep.oracle_checked;
      if (e.oracle_cost >= 0.90 * e.solution_cost) ++rep.oracle_within;
    }
  return rep;
}

json to_json(const BenchReport& r) {
  json stats = json::array(), entries = json::array();
  for (const MarginStats& s : r.stats)
    stats.push_back({{"margin", s.margin},
                     {"runs", s.runs},
                     {"successes", s.successes},
                     {"success_rate", s.runs ? double(s.successes) / s.runs : 0.0},
                     {"time_mean", s.time.mean},
                     {"time_std", s.time.std},
                     {"cost_mean", s.cost.mean},
                     {"cost_std", s.cost.std}});
  for (const BenchEntry& e : r.entries) {
    json runs = json::array();
    for (const BenchRun& run : e.runs)
      runs.push_back({{"success", run.success}, {"seconds", run.seconds}, {"cost", number_or_null(run.cost)}});
    entries.push_back({{"id", e.id},
                       {"solution_cost", e.solution_cost},
                       {"oracle_cost", number_or_null(e.oracle_cost)},
                       {"runs", std::move(runs)}});
  }
  return {{"schema", kBenchSchema},
          {"planner", to_string(r.config.planner)},
          {"budget_s", r.config.planner_cfg.max_time},
          {"margins", r.config.margins},
          {"oracle", {{"checked", r.oracle_checked}, {"within_0_90", r.oracle_within}}},
          {"stats", std::move(stats)},
          {"records", std::move(entries)}};
}

std::string format_table(const BenchReport& r) {
  std::string out = sformat("planner %s, %zu records, budget %.3g s\n", std::string(to_string(r.config.planner)).c_str(),
                            r.entries.size(), r.config.planner_cfg.max_time);
  out += sformat("%-8s %-22s %-22s %s\n", "margin", "time [s]", "cost", "success");
  for (const MarginStats& s : r.stats)
    out += sformat("+%-7.0f %8.3f +- %-9.3f %8.2f +- %-9.2f %d/%d\n", s.margin * 100.0, s.time.mean, s.time.std,
                   s.cost.mean, s.cost.std, s.successes, s.runs);
  if (r.oracle_checked)
    out += sformat("grid oracle >= 0.90 x solution cost: %d/%d\n", r.oracle_within, r.oracle_checked);
  return out;
}

SceneSpec random_problem(Rng& rng, Vec2 bounds, double c, int obstacle_count, double min_separation,
                         double radius_min, double radius_max) {
  SceneSpec s;
  s.bounds = bounds;
  s.clearance = c;
  const double pad = c + 1.0;
  for (int tries = 0;; ++tries) {
    if (tries > 10000) throw TimesExceeded("no start/goal pair at the requested separation");
    s.start = {rng.uniform(pad, bounds.x - pad), rng.uniform(pad, bounds.y - pad)};
    s.goal = {rng.uniform(pad, bounds.x - pad), rng.uniform(pad, bounds.y - pad)};
    if (distance(s.start, s.goal) >= min_separation) break;
  }
  while (static_cast<int>(s.obstacles.size()) < obstacle_count) {
    Obstacle o;
    o.radius = rng.uniform(radius_min, radius_max);
    o.center = {rng.uniform(0.0, bounds.x), rng.uniform(0.0, bounds.y)};
    if (distance(o.center, s.start) > o.radius + c && distance(o.center, s.goal) > o.radius + c)
      s.obstacles.push_back(o);
  }
  return s;
}

TimingReport timing_compare(const TimingConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };
  TimingReport rep;
  rep.count = cfg.count;
  if (cfg.count <= 0) {
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  cfg.generator.validate();
  cfg.planner.validate();

  std::vector<double> costs;
  auto t0 = clock::now();
  for (int p = 0; rep.generator.produced < cfg.count; ++p) {
    ++rep.generator.attempts;
    const PathBatch batch = generate_path_records(cfg.generator, p);
    for (const ProblemRecord& r : batch.records) {
      if (rep.generator.produced == cfg.count) break;
      ++rep.generator.produced;
      costs.push_back(r.solution_cost);
    }
    if (p > cfg.count * cfg.max_attempts_factor) break;
  }
  rep.generator.seconds = seconds_since(t0);
  rep.generator.cost = mean_std(costs);

  costs.clear();
  const double c = cfg.generator.scene.clearance;
  const RasterConfig& raster = cfg.generator.scene.raster;
  const Vec2 bounds{raster.world_width, raster.world_height};
  t0 = clock::now();
  for (int a = 0; rep.rrt.produced < cfg.count && a < cfg.count * cfg.max_attempts_factor; ++a) {
    ++rep.rrt.attempts;
    Rng rng(derive_seed(cfg.seed, a, 0, 5));
    const SceneSpec scene = random_problem(rng, bounds, c, cfg.random_obstacles);
    const double optimum = continuous_oracle(scene, c);
    if (!std::isfinite(optimum)) continue;
    PlannerConfig pc = cfg.planner;
    pc.clearance = c;
    pc.seed = derive_seed(cfg.seed, a, 1, 5);
    const PlannerResult res = run_until_cost(PlannerKind::RrtStar, scene, optimum, cfg.margin, pc);
    if (!res.success) continue;
    // Render what the generator would produce for this problem.
    const RgbImage image = encode_problem_image(scene, raster, cfg.generator.scene.marker_side);
    const RasterMask mask = rasterize_waypoints(*res.path, raster);
    if (image.width == 0 || mask.count() == 0) continue;
    ++rep.rrt.produced;
    costs.push_back(res.cost);
  }
  rep.rrt.seconds = seconds_since(t0);
  rep.rrt.cost = mean_std(costs);
  // Per produced record, so an RRT* pipeline that gives up early is not
  // credited for the problems it never solved.
  const double per_gen = rep.generator.seconds / std::max(1, rep.generator.produced);
  const double per_rrt = rep.rrt.produced ? rep.rrt.seconds / rep.rrt.produced : std::numeric_limits<double>::infinity();
  rep.ratio = per_gen > 0.0 ? per_rrt / per_gen : std::numeric_limits<double>::infinity();
  return rep;
}

json to_json(const TimingReport& r) {
  auto pipe = [](const PipelineStats& p) {
    return json{{"seconds", p.seconds},
                {"produced", p.produced},
                {"attempts", p.attempts},
                {"cost_mean", p.cost.mean},
                {"cost_std", p.cost.std}};
  };
  return {{"schema", "timing-v1"},
          {"count", r.count},
          {"generator", pipe(r.generator)},
          {"rrt_star", pipe(r.rrt)},
          {"ratio", number_or_null(r.ratio)}};
}

std::string format_table(const TimingReport& r) {
  if (r.count <= 0) return "no problems requested\n";
  std::string out = sformat("%-10s %10s %10s %10s %s\n", "pipeline", "time [s]", "produced", "attempts", "cost");
  auto row = [&](const char* name, const PipelineStats& p) {
    out += sformat("%-10s %10.3f %10d %10d %.2f +- %.2f\n", name, p.seconds, p.produced, p.attempts, p.cost.mean,
                   p.cost.std);
  };
  row("generator", r.generator);
  row("rrt-star", r.rrt);
  out += sformat("ratio %.1fx\n", r.ratio);
  return out;
}

}  // namespace edagepp
