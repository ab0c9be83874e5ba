#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "edagepp/dataset.hpp"
#include "edagepp/error.hpp"

using namespace edagepp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("edagepp_unit_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<ProblemRecord> make_records(int paths) {
  GeneratorConfig cfg;
  cfg.per_path = 2;
  std::vector<ProblemRecord> out;
  for (int i = 0; i < paths; ++i)
    for (ProblemRecord& r : generate_path_records(cfg, i).records) out.push_back(std::move(r));
  return out;
}

void write_all(const fs::path& dir, const std::vector<ProblemRecord>& recs) {
  DatasetHeader h;
  h.config = generator_config_json(GeneratorConfig{});
  DatasetWriter w(dir, h);
  for (const ProblemRecord& r : recs) w.write(r);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void rewrite_manifest_line(const fs::path& dir, std::size_t line, const nlohmann::json& j) {
  std::vector<std::string> lines;
  std::ifstream in(dir / kManifestName);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  in.close();
  lines.at(line) = j.dump();
  std::ofstream out(dir / kManifestName, std::ios::trunc);
  for (const std::string& l : lines) out << l << "\n";
}

}  // namespace

TEST_CASE("png round trip") {
  TempDir tmp("png");
  fs::create_directories(tmp.path);
  RgbImage img(7, 5, kFree);
  img.put(3, 2, kMarker);
  img.put(6, 4, {1, 2, 3});
  write_png(tmp.path / "a.png", img);
  CHECK(read_png_rgb(tmp.path / "a.png") == img);
  GrayImage g{4, 3, {0, 255, 0, 255, 255, 0, 0, 0, 255, 255, 255, 0}};
  write_png(tmp.path / "g.png", g);
  CHECK(read_png_gray(tmp.path / "g.png") == g);
  CHECK_THROWS_AS(read_png_rgb(tmp.path / "g.png"), CorruptRecord);
  CHECK_THROWS_AS(read_png_gray(tmp.path / "missing.png"), IoFailure);
}

TEST_CASE("write/read round trip is lossless") {
  TempDir tmp("roundtrip");
  const std::vector<ProblemRecord> recs = make_records(5);
  write_all(tmp.path, recs);
  const Dataset ds = read_manifest(tmp.path);
  CHECK(ds.header.format == kFormatVersion);
  REQUIRE(ds.entries.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const ProblemRecord r = read_record(ds.entries[i], tmp.path, ds.header.raster);
    const ProblemRecord& o = recs[i];
    CHECK(r.id == o.id);
    CHECK(r.seed == o.seed);
    CHECK(r.problem_image == o.problem_image);
    CHECK(r.space_mask == o.space_mask);
    CHECK(r.waypoint_mask == o.waypoint_mask);
    CHECK(r.solution.points == o.solution.points);
    CHECK(r.solution.tangents == o.solution.tangents);
    CHECK(r.solution_cost == o.solution_cost);
    CHECK(r.scene.obstacles == o.scene.obstacles);
    CHECK(r.scene.start == o.scene.start);
    CHECK(r.scene.goal == o.scene.goal);
    CHECK(r.scene.pose.angle == o.scene.pose.angle);
    CHECK(r.scene.pose.translation == o.scene.pose.translation);
    CHECK(r.scene.clearance == o.scene.clearance);
  }
}

TEST_CASE("manifest lines are self-contained objects") {
  TempDir tmp("schema");
  write_all(tmp.path, make_records(1));
  std::ifstream in(tmp.path / kManifestName);
  std::string line;
  std::getline(in, line);
  const nlohmann::json h = nlohmann::json::parse(line);
  CHECK(h["type"] == "header");
  CHECK(h["format"] == "edagepp-v1");
  CHECK(h["raster"]["width"] == 224);
  std::getline(in, line);
  const nlohmann::json j = nlohmann::json::parse(line);
  for (const char* k : {"id", "seed", "clearance", "solution_cost", "obstacle_count", "images", "waypoints",
                        "obstacles", "start", "goal", "pose", "bounds"})
    CHECK_MESSAGE(j.contains(k), k);
  CHECK(j["images"]["problem"] == "000000_problem.png");
  CHECK(j["obstacle_count"] == j["obstacles"].size());
  CHECK(j["solution_cost"].get<double>() > 0);
}

TEST_CASE("identical inputs give byte-identical files") {
  TempDir a("bytes_a"), b("bytes_b");
  const std::vector<ProblemRecord> recs = make_records(3);
  write_all(a.path, recs);
  write_all(b.path, make_records(3));
  for (const auto& e : fs::directory_iterator(a.path))
    CHECK(slurp(e.path()) == slurp(b.path / e.path().filename()));
}

TEST_CASE("read_record detects corruption") {
  TempDir tmp("corrupt");
  write_all(tmp.path, make_records(2));
  const Dataset ds = read_manifest(tmp.path);

  SUBCASE("truncated raster") {
    const fs::path f = tmp.path / ds.entries[0].space_file;
    const std::string bytes = slurp(f);
    std::ofstream(f, std::ios::binary | std::ios::trunc) << bytes.substr(0, bytes.size() / 2);
    CHECK_THROWS_AS(read_record(ds.entries[0], tmp.path, ds.header.raster), CorruptRecord);
  }
  SUBCASE("cost mismatch") {
    ManifestEntry e = ds.entries[1];
    e.solution_cost += 1e-5;
    CHECK_THROWS_WITH_AS(read_record(e, tmp.path, ds.header.raster), doctest::Contains("solution_cost"),
                         CorruptRecord);
  }
  SUBCASE("missing raster") {
    fs::remove(tmp.path / ds.entries[0].problem_file);
    CHECK_THROWS_AS(read_record(ds.entries[0], tmp.path, ds.header.raster), IoFailure);
  }
  SUBCASE("unknown format version") {
    nlohmann::json h = to_json(ds.header);
    h["format"] = "edagepp-v9";
    rewrite_manifest_line(tmp.path, 0, h);
    CHECK_THROWS_WITH_AS(read_manifest(tmp.path), doctest::Contains("edagepp-v9"), CorruptRecord);
  }
}

TEST_CASE("validate_dataset: fresh, moved obstacle, swapped masks") {
  TempDir tmp("validate");
  write_all(tmp.path, make_records(4));
  ValidationReport rep = validate_dataset(tmp.path);
  REQUIRE(rep.records.size() == 8u);
  CHECK(rep.passed == 8u);

  const Dataset ds = read_manifest(tmp.path);
  // move an obstacle onto the middle of the path of record 2
  ManifestEntry e = ds.entries[2];
  REQUIRE_FALSE(e.obstacles.empty());
  e.obstacles[0].center = e.waypoints[e.waypoints.size() / 2];
  e.obstacles[0].radius = 1.0;
  rewrite_manifest_line(tmp.path, 3, to_json(e));
  // swap the masks of record 5
  const ManifestEntry& s = ds.entries[5];
  fs::rename(tmp.path / s.space_file, tmp.path / "tmp.png");
  fs::rename(tmp.path / s.waypoints_file, tmp.path / s.space_file);
  fs::rename(tmp.path / "tmp.png", tmp.path / s.waypoints_file);

  rep = validate_dataset(tmp.path);
  CHECK(rep.passed == 6u);
  CHECK(rep.records[2].failed == std::vector<std::string>{kCheckClearance});
  CHECK(std::find(rep.records[5].failed.begin(), rep.records[5].failed.end(), std::string(kCheckMaskChain)) !=
        rep.records[5].failed.end());
}

TEST_CASE("check_record obstacle cap") {
  ProblemRecord r = make_records(1).at(0);
  CHECK(check_record(r).pass);
  while (r.scene.obstacles.size() <= 50) r.scene.obstacles.push_back(Obstacle{0.1, {0.05, 0.05}});
  const RecordCheck c = check_record(r);
  CHECK_FALSE(c.pass);
  CHECK(std::find(c.failed.begin(), c.failed.end(), std::string(kCheckObstacleCount)) != c.failed.end());
}
