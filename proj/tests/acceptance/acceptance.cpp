// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset (e.g. `edagepp_acceptance 1 4 5`).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "edagepp/corridor.hpp"
#include "edagepp/dataset.hpp"
#include "edagepp/error.hpp"
#include "edagepp/extract.hpp"
#include "edagepp/planners.hpp"
#include "edagepp/pool.hpp"
#include "edagepp/report.hpp"
#include "edagepp/rng.hpp"
#include "edagepp/scene.hpp"

using namespace edagepp;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path scratch_root() {
  const fs::path p = fs::temp_directory_path() / "edagepp_acceptance";
  fs::create_directories(p);
  return p;
}

// Writes paths * per_path records with the default generator.
std::size_t write_dataset(const fs::path& dir, GeneratorConfig cfg, int workers) {
  fs::remove_all(dir);
  DatasetHeader header;
  header.raster = cfg.scene.raster;
  header.config = generator_config_json(cfg);
  DatasetWriter writer(dir, header);
  ordered_parallel<PathBatch>(
      static_cast<std::size_t>(cfg.paths), workers, [&](std::size_t i) { return generate_path_records(cfg, int(i)); },
      [&](std::size_t, PathBatch b) {
        for (const ProblemRecord& r : b.records) writer.write(r);
      });
  return writer.count();
}

std::vector<ProblemRecord> load_records(const fs::path& dir, std::size_t limit) {
  const Dataset ds = read_manifest(dir);
  std::vector<ProblemRecord> out;
  for (std::size_t i = 0; i < ds.entries.size() && i < limit; ++i)
    out.push_back(read_record(ds.entries[i], dir, ds.header.raster));
  return out;
}

GeneratorConfig default_config(int records) {
  GeneratorConfig cfg;  // seed 42, c = 3
  cfg.paths = records / cfg.per_path;
  return cfg;
}

const fs::path& thousand_dir() {
  static const fs::path p = scratch_root() / "c1";
  return p;
}

// 1. validity of 1000 records, <= 5 min
Outcome generator_validity() {
  const auto t0 = Clock::now();
  const std::size_t n = write_dataset(thousand_dir(), default_config(1000), resolve_workers(0));
  const double gen = since(t0);
  const ValidationReport rep = validate_dataset(thousand_dir());
  const double total = since(t0);
  std::size_t violations = 0;
  for (const RecordCheck& c : rep.records)
    if (!c.pass) ++violations;
  const bool pass = n == 1000 && rep.records.size() == 1000 && rep.passed == 1000 && total <= 300.0;
  return {pass, fmt("%zu records, %zu/%zu valid, generate %.1f s, total %.1f s", n, rep.passed, rep.records.size(),
                    gen, total)};
}

// 2. grid oracle >= 0.9 cost on >= 90 of 100; rrt_star (10 s) never below 0.9 cost
Outcome near_optimality() {
  if (!fs::exists(thousand_dir() / kManifestName)) write_dataset(thousand_dir(), default_config(1000), resolve_workers(0));
  const std::vector<ProblemRecord> recs = load_records(thousand_dir(), 100);
  int oracle_ok = 0, solved = 0, beaten = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const ProblemRecord& r : recs) {
    const double oracle = grid_dijkstra_oracle(r.scene, r.scene.clearance, 128);
    if (oracle >= 0.9 * r.solution_cost) ++oracle_ok;
    PlannerConfig pc;
    pc.clearance = r.scene.clearance;
    pc.max_iterations = 0;
    pc.max_time = 10.0;
    pc.seed = derive_seed(42, r.id, 0, 2);
    const PlannerResult res = rrt_star(r.scene, pc);
    if (!res.success) continue;
    ++solved;
    worst = std::min(worst, res.cost / r.solution_cost);
    if (res.cost < 0.9 * r.solution_cost) ++beaten;
  }
  const bool pass = recs.size() == 100 && oracle_ok >= 90 && beaten == 0;
  return {pass, fmt("oracle >= 0.9 cost on %d/100; rrt_star solved %d, below 0.9 cost on %d, min cost ratio %.3f",
                    oracle_ok, solved, beaten, worst)};
}

// 3. generator >= 5x faster than the RRT* pipeline at N = 100, <= 30 min
Outcome throughput() {
  const auto t0 = Clock::now();
  TimingConfig cfg;
  cfg.count = 100;
  cfg.planner.max_iterations = 0;
  cfg.planner.max_time = 2.0;
  const TimingReport rep = timing_compare(cfg);
  const double total = since(t0);
  const bool pass = rep.ratio >= 5.0 && total <= 1800.0;
  return {pass, fmt("generator %d records in %.2f s, rrt* %d/%d in %.1f s, ratio %.1fx, total %.0f s",
                    rep.generator.produced, rep.generator.seconds, rep.rrt.produced, rep.rrt.attempts, rep.rrt.seconds,
                    rep.ratio, total)};
}

// 4. continuity over 1000 paths, <= 1 min
Outcome continuity() {
  const auto t0 = Clock::now();
  PathGenConfig cfg;
  double gap = 0, tangent = 0, spread = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(42, i, 0, 4));
    const PathPolyline p = generate_path(cfg, rng);
    const JunctionErrors e = junction_errors(p);
    gap = std::max(gap, e.max_gap);
    tangent = std::max(tangent, e.max_tangent);
    spread = std::max(spread, spacing_spread(p.points));
  }
  const double secs = since(t0);
  const bool pass = gap <= 1e-9 && tangent <= 1e-6 && spread <= 1e-6 && secs <= 60.0;
  return {pass, fmt("max gap %.2e, max tangent mismatch %.2e rad, max spread %.2e, %.1f s", gap, tangent, spread, secs)};
}

// 5. stadium area within 3%; c = 3 mask a strict superset of c = 1 on 100 paths
Outcome corridor_geometry() {
  const RasterConfig rc;
  const double px_area = (rc.world_width / rc.width) * (rc.world_height / rc.height);
  double worst_area = 0;
  for (double c : {1.0, 3.0}) {
    const Point2 a{12, 20}, b{50, 41};
    PathPolyline p;
    p.points = resample_equal_arclength(std::vector<Point2>{a, b}, 64);
    p.spacing = distance(p.points[0], p.points[1]);
    p.tangents.assign(p.points.size(), normalized(b - a));
    const double L = distance(a, b), expected = 2 * c * L + std::numbers::pi * c * c;
    const double area = rasterize_corridor(calcu_boundary(p, c), rc).count() * px_area;
    worst_area = std::max(worst_area, std::abs(area / expected - 1.0));
  }
  GeneratorConfig cfg = default_config(100);
  cfg.per_path = 1;
  cfg.paths = 100;
  int superset = 0;
  for (int i = 0; i < cfg.paths; ++i) {
    const PathBatch batch = generate_path_records(cfg, i);
    if (batch.records.empty()) continue;
    const PathPolyline& p = batch.records[0].solution;
    const RasterMask m1 = rasterize_corridor(calcu_boundary(p, 1.0), rc);
    const RasterMask m3 = rasterize_corridor(calcu_boundary(p, 3.0), rc);
    if (m1.subset_of(m3) && m3.count() > m1.count()) ++superset;
  }
  const bool pass = worst_area <= 0.03 && superset == 100;
  return {pass, fmt("stadium area error %.2f%%, strict superset on %d/100 paths", 100 * worst_area, superset)};
}

// 6. empty-map rrt_star, informed vs plain medians, clearance of every path
Outcome planner_sanity() {
  SceneSpec empty;
  empty.start = {5, 5};
  empty.goal = {59, 59};
  empty.clearance = 3.0;
  const double best = distance(empty.start, empty.goal);
  std::size_t paths = 0, violations = 0;
  auto check = [&](const PlannerResult& r, const SceneSpec& s) {
    if (!r.path) return;
    ++paths;
    violations += verify_clearance(*r.path, s, s.clearance).violations;
  };

  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PlannerConfig pc;
    pc.max_iterations = 5000;
    pc.seed = seed;
    const PlannerResult r = rrt_star(empty, pc);
    check(r, empty);
    if (r.success && r.cost <= 1.02 * best) ++within;
  }

  // paired seeds on cluttered random problems at equal iteration budget
  std::vector<double> plain, informed;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(derive_seed(42, seed, 0, 6));
    const SceneSpec s = random_problem(rng, {64, 64}, 3.0, 20);
    PlannerConfig pc;
    pc.max_iterations = 5000;
    pc.seed = seed;
    const PlannerResult a = rrt_star(s, pc), b = informed_rrt_star(s, pc);
    check(a, s);
    check(b, s);
    plain.push_back(a.cost);
    informed.push_back(b.cost);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  const double mp = median(plain), mi = median(informed);
  const bool pass = within >= 95 && mi <= mp && violations == 0;
  return {pass, fmt("within 2%% on %d/100; median cost irrt* %.3f vs rrt* %.3f; %zu paths, %zu clearance violations",
                    within, mi, mp, paths, violations)};
}

// 7. blurred ground-truth masks from 200 records
Outcome extraction_fidelity() {
  GeneratorConfig cfg = default_config(200);
  int reached = 0, close = 0, n = 0;
  double worst = 0;
  for (int i = 0; i < cfg.paths; ++i) {
    for (const ProblemRecord& r : generate_path_records(cfg, i).records) {
      ++n;
      const PixelTransform t = r.waypoint_mask.world_to_pixel;
      const ProbabilityMap m = gaussian_blur(probability_from_mask(r.waypoint_mask), 1.0);
      try {
        const std::vector<PixelCoord> px =
            extract_waypoints(m, pixel_of(t, r.scene.start), pixel_of(t, r.scene.goal), 100000);
        ++reached;
        const double err = std::abs(path_cost(walk_to_world(px, t, r.scene.start, r.scene.goal)) / r.solution_cost - 1);
        worst = std::max(worst, err);
        if (err <= 0.05) ++close;
      } catch (const DeadEnd&) {
      } catch (const StepLimit&) {
      }
    }
  }
  const bool pass = n == 200 && reached >= 190 && close >= 190;
  return {pass, fmt("%d records, goal reached %d, cost within 5%% %d (worst reached error %.2f%%)", n, reached, close,
                    100 * worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// 8. byte-identical datasets across runs and worker counts; lossless round trip
Outcome determinism() {
  const GeneratorConfig cfg = default_config(100);
  const fs::path a = scratch_root() / "c8a", b = scratch_root() / "c8b";
  write_dataset(a, cfg, 1);
  write_dataset(b, cfg, std::max(2, resolve_workers(0)));
  std::size_t files = 0, differing = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    const fs::path other = b / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differing;
  }
  const bool same_count =
      std::distance(fs::directory_iterator(a), fs::directory_iterator{}) ==
      std::distance(fs::directory_iterator(b), fs::directory_iterator{});

  std::vector<ProblemRecord> orig;
  for (int i = 0; i < cfg.paths; ++i)
    for (ProblemRecord& r : generate_path_records(cfg, i).records) orig.push_back(std::move(r));
  const std::vector<ProblemRecord> back = load_records(a, orig.size());
  int lossless = 0;
  for (std::size_t i = 0; i < orig.size() && i < back.size(); ++i) {
    const ProblemRecord &o = orig[i], &r = back[i];
    if (o.id == r.id && o.seed == r.seed && o.problem_image == r.problem_image && o.space_mask == r.space_mask &&
        o.waypoint_mask == r.waypoint_mask && o.solution.points == r.solution.points &&
        o.solution.tangents == r.solution.tangents && o.solution_cost == r.solution_cost &&
        o.scene.obstacles == r.scene.obstacles && o.scene.start == r.scene.start && o.scene.goal == r.scene.goal &&
        o.scene.pose.angle == r.scene.pose.angle && o.scene.pose.translation == r.scene.pose.translation)
      ++lossless;
  }
  fs::remove_all(a);
  fs::remove_all(b);
  const bool pass = same_count && differing == 0 && files > 0 && orig.size() == 100 && lossless == 100;
  return {pass, fmt("%zu files compared, %zu differ; round trip lossless %d/%zu", files, differing, lossless,
                    orig.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"generator validity", generator_validity}, {"near-optimality", near_optimality},
      {"throughput", throughput},                 {"continuity", continuity},
      {"corridor geometry", corridor_geometry},   {"planner sanity", planner_sanity},
      {"extraction fidelity", extraction_fidelity}, {"determinism and round trip", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first,
                o.detail.c_str(), since(t0));
    std::fflush(stdout);
  }
  fs::remove_all(scratch_root());
  return failed == 0 ? 0 : 1;
}
