#include <doctest.h>

#include <cmath>

#include "edagepp/corridor.hpp"
#include "edagepp/error.hpp"
#include "edagepp/extract.hpp"
#include "fixtures.hpp"

using namespace edagepp;

namespace {

ProbabilityMap line_map(int w, int h, PixelCoord a, PixelCoord b) {
  ProbabilityMap m(w, h);
  for_each_line_pixel(a, b, [&](int col, int row) { m.at(col, row) = 1.0; });
  return m;
}

void check_walk_contract(const std::vector<PixelCoord>& px, PixelCoord start, PixelCoord goal, std::size_t max_steps) {
  REQUIRE_FALSE(px.empty());
  CHECK(px.front() == start);
  CHECK(px.back() == goal);
  CHECK(px.size() <= max_steps);
  for (std::size_t i = 0; i + 1 < px.size(); ++i) {
    CHECK(std::abs(px[i].col - px[i + 1].col) <= 1);
    CHECK(std::abs(px[i].row - px[i + 1].row) <= 1);
  }
  for (std::size_t i = 0; i < px.size(); ++i)
    for (std::size_t j = i + 1; j < px.size(); ++j) REQUIRE_FALSE(px[i] == px[j]);
}

}  // namespace

TEST_CASE("extraction follows a single bright line") {
  const PixelCoord a{5, 10}, b{40, 10};
  const ProbabilityMap m = line_map(64, 64, a, b);
  const std::vector<PixelCoord> px = extract_waypoints(m, a, b, 1000);
  check_walk_contract(px, a, b, 1000);
  REQUIRE(px.size() == 36u);
  for (std::size_t i = 0; i < px.size(); ++i) CHECK(px[i] == PixelCoord{5 + int(i), 10});
}

TEST_CASE("extraction follows a diagonal line") {
  const PixelCoord a{3, 50}, b{30, 23};
  const ProbabilityMap m = line_map(64, 64, a, b);
  const std::vector<PixelCoord> px = extract_waypoints(m, a, b, 1000);
  check_walk_contract(px, a, b, 1000);
  CHECK(px.size() == 28u);
}

TEST_CASE("extraction tie-break scans N, NE, E, ... and is a pure function") {
  ProbabilityMap m(9, 9, 0.5);
  const std::vector<PixelCoord> a = extract_waypoints(m, {4, 4}, {4, 0}, 100);
  const std::vector<PixelCoord> b = extract_waypoints(m, {4, 4}, {4, 0}, 100);
  CHECK(a == b);
  REQUIRE(a.size() >= 2);
  CHECK(a[1] == PixelCoord{4, 3});  // north wins all ties
  m = ProbabilityMap(9, 9, 0.5);
  const std::vector<PixelCoord> c = extract_waypoints(m, {4, 8}, {8, 8}, 100);
  CHECK(c[1] == PixelCoord{4, 7});
}

TEST_CASE("extraction errors") {
  ProbabilityMap m(16, 16);
  m.at(1, 1) = 1.0;
  m.at(2, 2) = 1.0;
  CHECK_THROWS_AS(extract_waypoints(m, {1, 1}, {12, 12}, 100), DeadEnd);

  const ProbabilityMap line = line_map(64, 4, {0, 1}, {63, 1});
  CHECK_THROWS_AS(extract_waypoints(line, {0, 1}, {63, 1}, 10), StepLimit);
  CHECK_THROWS_AS(extract_waypoints(line, {0, 1}, {70, 1}, 10), DegenerateInput);
}

TEST_CASE("extraction never revisits a pixel") {
  // a plateau forces the walk to wander
  ProbabilityMap m(12, 12, 0.3);
  const std::vector<PixelCoord> px = extract_waypoints(m, {0, 11}, {11, 0}, 200);
  check_walk_contract(px, {0, 11}, {11, 0}, 200);
}

TEST_CASE("gaussian_blur keeps values in [0, 1] with a unit peak") {
  const ProbabilityMap m = gaussian_blur(line_map(32, 32, {2, 2}, {29, 20}), 1.0);
  m.validate();
  double peak = 0;
  for (double v : m.values) peak = std::max(peak, v);
  CHECK(peak == doctest::Approx(1.0));
  CHECK_THROWS_AS(gaussian_blur(m, 0.0), DegenerateInput);
}

TEST_CASE("path_cost and decimate") {
  const std::vector<Point2> pts{{0, 0}, {3, 4}, {3, 10}};
  CHECK(path_cost(pts) == doctest::Approx(11.0));
  const std::vector<Point2> one{{1, 1}};
  CHECK(path_cost(one) == 0.0);
  std::vector<Point2> line;
  for (int i = 0; i <= 10; ++i) line.push_back({double(i), 0});
  CHECK(decimate(line, 4).size() == 4u);  // 0, 4, 8, 10
  CHECK(decimate(line, 5).size() == 3u);  // 0, 5, 10
  CHECK_THROWS_AS(decimate(line, 0), DegenerateInput);
}

TEST_CASE("prune_detours cuts loops between adjacent pixels") {
  const std::vector<PixelCoord> walk{{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}, {0, 2}, {0, 3}};
  const std::vector<PixelCoord> pruned = prune_detours(walk);
  CHECK(pruned.front() == walk.front());
  CHECK(pruned.back() == walk.back());
  CHECK(pruned.size() < walk.size());
  for (std::size_t i = 0; i + 1 < pruned.size(); ++i) {
    CHECK(std::abs(pruned[i].col - pruned[i + 1].col) <= 1);
    CHECK(std::abs(pruned[i].row - pruned[i + 1].row) <= 1);
  }
}

TEST_CASE("verify_clearance counts violations") {
  SceneSpec s = fixtures::empty_scene({0, 0}, {10, 0});
  s.obstacles.push_back(Obstacle{1.0, {5, 3}, ObstacleRole::Filler});
  const std::vector<Point2> path{{0, 0}, {10, 0}};
  ClearanceReport r = verify_clearance(path, s, 3.0);
  CHECK(r.violations > 0u);
  CHECK(r.min_margin == doctest::Approx(-1.0));
  r = verify_clearance(path, s, 2.0);
  CHECK(r.violations == 0u);
  CHECK(r.min_margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("blurred ground-truth masks extract to near the solution cost") {
  GeneratorConfig cfg;
  cfg.per_path = 1;
  const PixelTransform t = cfg.scene.raster.transform();
  int ok = 0, n = 0;
  for (int i = 0; i < 40; ++i) {
    const ProblemRecord r = generate_path_records(cfg, i).records.at(0);
    ++n;
    const ProbabilityMap m = gaussian_blur(probability_from_mask(r.waypoint_mask), 1.0);
    try {
      const std::vector<PixelCoord> px =
          extract_waypoints(m, pixel_of(t, r.scene.start), pixel_of(t, r.scene.goal), 100000);
      const double cost = path_cost(walk_to_world(px, t, r.scene.start, r.scene.goal));
      if (std::abs(cost / r.solution_cost - 1.0) <= 0.05) ++ok;
    } catch (const DeadEnd&) {
    }
  }
  CHECK(ok >= 0.95 * n);
}
