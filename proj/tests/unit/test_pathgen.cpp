#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edagepp/error.hpp"
#include "edagepp/pathgen.hpp"
#include "edagepp/rng.hpp"

using namespace edagepp;

TEST_CASE("fit_polynomial recovers an exact line") {
  std::vector<double> xs, ys;
  Rng rng(1);
  for (int i = 0; i < 12; ++i) {
    xs.push_back(rng.uniform(0, 20));
    ys.push_back(2 * xs.back() + 1);
  }
  for (int order : {1, 2, 3}) {
    const std::vector<double> w = fit_polynomial(xs, ys, order);
    REQUIRE(static_cast<int>(w.size()) == order + 1);
    CHECK(std::abs(w[0] - 1) <= 1e-8);
    CHECK(std::abs(w[1] - 2) <= 1e-8);
    for (int k = 2; k <= order; ++k) CHECK(std::abs(w[k]) <= 1e-8);
  }
}

TEST_CASE("fit_polynomial with r + 1 points interpolates") {
  const std::vector<double> xs{0, 1.5, 3, 7}, ys{2, -1, 4, 0.5};
  const std::vector<double> w = fit_polynomial(xs, ys, 3);
  const PolySegment seg{w, 0, 7};
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(seg.evaluate(xs[i]) - ys[i]) <= 1e-8);
}

TEST_CASE("fit_polynomial rejects a rank deficient design") {
  const std::vector<double> xs{1, 1, 1, 1}, ys{0, 1, 2, 3};
  CHECK_THROWS_AS(fit_polynomial(xs, ys, 2), SingularFit);
}

TEST_CASE("random_poly_segment is deterministic") {
  PathGenConfig cfg;
  Rng a(77), b(77);
  const PolySegment s1 = random_poly_segment(cfg, a), s2 = random_poly_segment(cfg, b);
  CHECK(s1.coeffs == s2.coeffs);
  CHECK(s1.order() == cfg.order);
  CHECK(s1.x_hi > s1.x_lo);
}

TEST_CASE("sample_segment on y = 0") {
  const PolySegment seg{{0.0, 0.0}, 0, 10};
  const SegmentSamples s = sample_segment(seg, 6);
  REQUIRE(s.points.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(s.points[i].x == doctest::Approx(2.0 * i).epsilon(1e-9));
    CHECK(s.points[i].y == 0.0);
    CHECK(s.gradients[i] == 0.0);
  }
}

TEST_CASE("sample_segment gradients are the analytic derivative") {
  const PolySegment sq{{0.0, 0.0, 1.0}, 0, 5};
  CHECK(std::abs(sq.derivative(3.0) - 6.0) <= 1e-9);
  Rng rng(4);
  PathGenConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const PolySegment seg = random_poly_segment(cfg, rng);
    const SegmentSamples s = sample_segment(seg, 64);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      CHECK(std::abs(s.points[i].y - seg.evaluate(s.points[i].x)) <= 1e-9);
      CHECK(std::abs(s.gradients[i] - seg.derivative(s.points[i].x)) <= 1e-9);
    }
    CHECK(spacing_spread(s.points) <= 1e-6);
  }
}

TEST_CASE("concat of two flat segments is a straight line") {
  PathGenConfig cfg;
  cfg.curves = 2;
  const std::vector<PolySegment> segs{{{0.0, 0.0}, 0, 10}, {{0.0, 0.0}, 0, 10}};
  const PathPolyline p = concat_segments(segs, cfg);
  REQUIRE(p.size() == 2u * cfg.points_per_curve);
  for (Point2 q : p.points) CHECK(std::abs(q.y - p.points.front().y) <= 1e-9);
  CHECK(p.length() == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("concat aligns a slope-1 end with a flat start") {
  PathGenConfig cfg;
  cfg.curves = 2;
  const std::vector<PolySegment> segs{{{0.0, 1.0}, 0, 5}, {{0.0, 0.0}, 0, 5}};
  const PathPolyline p = concat_segments(segs, cfg);
  const JunctionErrors e = junction_errors(p);
  CHECK(e.max_tangent <= 1e-9);
  CHECK(e.max_gap <= 1e-9);
  // the second curve leaves in the first curve's end direction, 45 degrees
  const Vec2 t = p.tangents.back();
  CHECK(std::abs(std::atan2(t.y, t.x) - std::numbers::pi / 4) <= 1e-9);
}

TEST_CASE("generate_path with one linear curve is straight") {
  PathGenConfig cfg;
  cfg.curves = 1;
  cfg.order = 1;
  Rng rng(8);
  const PathPolyline p = generate_path(cfg, rng);
  REQUIRE(static_cast<int>(p.size()) == cfg.points_per_curve);
  const Vec2 dir = normalized(p.points.back() - p.points.front());
  for (Point2 q : p.points) CHECK(std::abs(cross(dir, q - p.points.front())) <= 1e-9);
}

TEST_CASE("generated paths satisfy the spacing and continuity invariants") {
  PathGenConfig cfg;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const PathPolyline p = generate_path(cfg, rng);
    REQUIRE(static_cast<int>(p.size()) == cfg.curves * cfg.points_per_curve);
    CHECK(std::abs(p.length() - (p.size() - 1) * p.spacing) <= 1e-6 * p.length());
    CHECK(spacing_spread(p.points) <= 1e-6);
    const JunctionErrors e = junction_errors(p);
    CHECK(e.max_gap <= 1e-9);
    CHECK(e.max_tangent <= 1e-6);
    for (double g : p.gradients) CHECK(std::isfinite(g));
  }
}

TEST_CASE("generate_path is deterministic") {
  PathGenConfig cfg;
  Rng a(123), b(123);
  const PathPolyline p = generate_path(cfg, a), q = generate_path(cfg, b);
  CHECK(p.points == q.points);
  CHECK(p.gradients == q.gradients);
}

TEST_CASE("path config validation") {
  PathGenConfig cfg;
  cfg.order = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.points_per_curve = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.cap_samples = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.fit_sample_count = cfg.order;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
