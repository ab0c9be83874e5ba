#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "edagepp/dataset.hpp"
#include "edagepp/error.hpp"
#include "edagepp/extract.hpp"
#include "edagepp/pool.hpp"
#include "edagepp/report.hpp"

namespace fs = std::filesystem;
using namespace edagepp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  double world = 64.0;
  int raster = 224;
  double clearance = 3.0;
  std::uint64_t seed = 42;
  int workers = 0;

  RasterConfig raster_config() const {
    RasterConfig r;
    r.width = r.height = raster;
    r.world_width = r.world_height = world;
    return r;
  }
};

void add_common(CLI::App* app, Common& c, bool with_clearance = true) {
  app->add_option("--world", c.world, "world side length")->capture_default_str();
  app->add_option("--raster", c.raster, "raster side in pixels")->capture_default_str();
  if (with_clearance) app->add_option("--clearance", c.clearance, "clearance c")->capture_default_str();
  app->add_option("--seed", c.seed, "global seed")->capture_default_str();
  app->add_option("--workers", c.workers, "worker threads (0: all cores, EDAGE_THREADS overrides)")
      ->capture_default_str();
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out || !(out << text)) throw IoFailure(file.string() + ": cannot write");
}

// ---- generate ----

struct GenerateArgs {
  Common common;
  int paths = 250;
  int per_path = 4;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorConfig cfg;
  cfg.paths = a.paths;
  cfg.per_path = a.per_path;
  cfg.seed = a.common.seed;
  cfg.scene.clearance = a.common.clearance;
  cfg.scene.raster = a.common.raster_config();
  cfg.validate();
  const int workers = resolve_workers(a.common.workers);

  DatasetHeader header;
  header.raster = cfg.scene.raster;
  header.config = generator_config_json(cfg);
  DatasetWriter writer(a.out, header);

  int failures = 0;
  const auto t0 = std::chrono::steady_clock::now();
  ordered_parallel<PathBatch>(
      static_cast<std::size_t>(cfg.paths), workers, [&](std::size_t i) { return generate_path_records(cfg, int(i)); },
      [&](std::size_t, PathBatch b) {
        if (b.failure) {
          ++failures;
          std::cerr << "path " << b.path_index << ": " << *b.failure << "\n";
        }
        for (const ProblemRecord& r : b.records) writer.write(r);
      });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("wrote %zu records to %s in %.2f s (%.1f records/s), %d failed paths, %d workers\n", writer.count(),
              a.out.c_str(), secs, secs > 0 ? writer.count() / secs : 0.0, failures, workers);
  return kExitOk;
}

// ---- validate ----

int cmd_validate(const std::string& dir, int max_obstacles) {
  if (!fs::exists(fs::path(dir) / kManifestName)) {
    std::cerr << "error: " << dir << " contains no " << kManifestName << "\n";
    return kExitUsage;
  }
  const ValidationReport rep = validate_dataset(dir, max_obstacles);
  for (const RecordCheck& c : rep.records) {
    if (c.pass) continue;
    std::printf("record %06llu FAIL:", static_cast<unsigned long long>(c.id));
    for (const std::string& f : c.failed) std::printf(" %s", f.c_str());
    if (!c.detail.empty()) std::printf(" (%s)", c.detail.c_str());
    std::printf("\n");
  }
  std::printf("%zu/%zu records pass (%.1f%%)\n", rep.passed, rep.records.size(), 100.0 * rep.pass_rate());
  return rep.passed == rep.records.size() && !rep.records.empty() ? kExitOk : kExitFail;
}

// ---- bench ----

struct BenchArgs {
  Common common;
  std::string dir;
  std::string planner = "rrt-star";
  std::vector<double> margins{0.0, 0.02, 0.05};
  double budget_ms = 10000.0;
  int limit = 0;
  bool no_oracle = false;
  std::string report;
};

int cmd_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.planner = planner_kind_from_string(a.planner);
  cfg.margins = a.margins;
  cfg.planner_cfg.max_iterations = 0;
  cfg.planner_cfg.max_time = a.budget_ms / 1000.0;
  cfg.oracle = !a.no_oracle;
  cfg.seed = a.common.seed;
  for (double m : cfg.margins)
    if (!(m >= 0.0)) throw ConfigError("margins must be >= 0");

  const Dataset ds = read_manifest(a.dir);
  std::vector<ProblemRecord> records;
  for (const ManifestEntry& e : ds.entries) {
    if (a.limit > 0 && static_cast<int>(records.size()) >= a.limit) break;
    records.push_back(read_record(e, a.dir, ds.header.raster));
  }
  const BenchReport rep = bench_records(records, cfg, resolve_workers(a.common.workers));
  std::cout << format_table(rep);
  const nlohmann::json j = to_json(rep);
  if (a.report.empty()) std::cout << j.dump() << "\n";
  else write_text(a.report, j.dump(2) + "\n");
  return kExitOk;
}

// ---- extract ----

struct ExtractArgs {
  Common common;
  std::string map;
  std::vector<int> start, goal;
  double sigma = 0.0;
  std::size_t max_steps = 100000;
  std::size_t stride = 2;
  std::string out;
  std::string overlay;
};

int cmd_extract(const ExtractArgs& a) {
  const GrayImage g = read_png_gray(a.map);
  ProbabilityMap m(g.width, g.height);
  for (std::size_t i = 0; i < g.data.size(); ++i) m.values[i] = g.data[i] / 255.0;
  if (a.sigma > 0.0) m = gaussian_blur(m, a.sigma);
  const PixelCoord s{a.start[0], a.start[1]}, goal{a.goal[0], a.goal[1]};

  std::vector<PixelCoord> px;
  try {
    px = extract_waypoints(m, s, goal, a.max_steps);
  } catch (const DeadEnd& e) {
    std::cerr << e.what() << "\n";
    return kExitFail;
  } catch (const StepLimit& e) {
    std::cerr << e.what() << "\n";
    return kExitFail;
  }
  RasterConfig rc = a.common.raster_config();
  rc.width = g.width;
  rc.height = g.height;
  const PixelTransform t = rc.transform();
  const std::vector<Point2> world =
      walk_to_world(px, t, t.pixel_center_world(s.col, s.row), t.pixel_center_world(goal.col, goal.row), a.stride);
  const double cost = path_cost(world);

  if (!a.out.empty()) {
    nlohmann::json j = {{"pixels", nlohmann::json::array()}, {"world", nlohmann::json::array()}, {"cost", cost}};
    for (const PixelCoord& p : px) j["pixels"].push_back({p.col, p.row});
    for (Point2 p : world) j["world"].push_back({p.x, p.y});
    write_text(a.out, j.dump() + "\n");
  }
  if (!a.overlay.empty()) {
    RgbImage img(g.width, g.height, kFree);
    for (int row = 0; row < g.height; ++row)
      for (int col = 0; col < g.width; ++col) {
        const auto v = static_cast<std::uint8_t>(255 - g.data[std::size_t(row) * g.width + col]);
        img.put(col, row, {v, v, v});
      }
    for (const PixelCoord& p : px) img.put(p.col, p.row, kMarker);
    write_png(a.overlay, img);
  }
  std::printf("%zu pixels, cost %.6f\n", px.size(), cost);
  return kExitOk;
}

// ---- timing ----

struct TimingArgs {
  Common common;
  int count = 100;
  int per_path = 4;
  double budget_ms = 2000.0;
  double margin = 0.05;
  std::string report;
};

int cmd_timing(const TimingArgs& a) {
  TimingConfig cfg;
  cfg.count = a.count;
  cfg.generator.seed = a.common.seed;
  cfg.generator.per_path = a.per_path;
  cfg.generator.scene.clearance = a.common.clearance;
  cfg.generator.scene.raster = a.common.raster_config();
  cfg.planner.max_iterations = 0;
  cfg.planner.max_time = a.budget_ms / 1000.0;
  cfg.margin = a.margin;
  cfg.seed = a.common.seed;
  if (a.count < 0) throw ConfigError("count must be >= 0");
  const TimingReport rep = timing_compare(cfg);
  std::cout << format_table(rep);
  const nlohmann::json j = to_json(rep);
  if (a.report.empty()) std::cout << j.dump() << "\n";
  else write_text(a.report, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator of 2D path-planning problems with near-optimal solutions"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "generate a dataset");
  add_common(g, gen.common);
  g->add_option("--paths", gen.paths, "number of random paths")->capture_default_str();
  g->add_option("--per-path", gen.per_path, "problems per path")->capture_default_str();
  g->add_option("--out", gen.out, "output directory")->required();

  std::string vdir;
  int max_obstacles = 50;
  auto* v = app.add_subcommand("validate", "run the validity suite over a dataset");
  v->add_option("dir", vdir, "dataset directory")->required();
  v->add_option("--max-obstacles", max_obstacles)->capture_default_str();

  BenchArgs bench;
  bench.common.seed = 7;
  auto* b = app.add_subcommand("bench", "run a planner on every record until it matches the stored solution");
  add_common(b, bench.common, false);
  b->add_option("dir", bench.dir, "dataset directory")->required();
  b->add_option("--planner", bench.planner, "rrt-star or irrt-star")->capture_default_str();
  b->add_option("--margin", bench.margins, "cost margins, fractions (repeatable)")->capture_default_str();
  b->add_option("--budget-ms", bench.budget_ms, "time budget per run")->capture_default_str();
  b->add_option("--limit", bench.limit, "only the first N records (0: all)")->capture_default_str();
  b->add_flag("--no-oracle", bench.no_oracle, "skip the grid oracle");
  b->add_option("--report", bench.report, "write the JSON report here instead of stdout");

  ExtractArgs ext;
  auto* e = app.add_subcommand("extract", "extract a waypoint path from a grayscale probability map");
  add_common(e, ext.common, false);
  e->add_option("map", ext.map, "grayscale PNG, 255 = probability 1")->required();
  e->add_option("--start", ext.start, "start pixel: col row")->expected(2)->required();
  e->add_option("--goal", ext.goal, "goal pixel: col row")->expected(2)->required();
  e->add_option("--sigma", ext.sigma, "Gaussian blur before extraction (0: none)")->capture_default_str();
  e->add_option("--max-steps", ext.max_steps)->capture_default_str();
  e->add_option("--stride", ext.stride, "keep every n-th pixel for the cost")->capture_default_str();
  e->add_option("--out", ext.out, "path file (JSON)");
  e->add_option("--overlay", ext.overlay, "overlay PNG");

  TimingArgs tim;
  auto* t = app.add_subcommand("timing", "compare generation time against RRT*-solved random problems");
  add_common(t, tim.common);
  t->add_option("--count", tim.count)->capture_default_str();
  t->add_option("--per-path", tim.per_path)->capture_default_str();
  t->add_option("--budget-ms", tim.budget_ms, "RRT* budget per problem")->capture_default_str();
  t->add_option("--margin", tim.margin)->capture_default_str();
  t->add_option("--report", tim.report, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*v) return cmd_validate(vdir, max_obstacles);
    if (*b) return cmd_bench(bench);
    if (*e) return cmd_extract(ext);
    if (*t) return cmd_timing(tim);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
