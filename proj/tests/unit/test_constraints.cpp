#include <doctest.h>

#include <cmath>

#include "edagepp/constraints.hpp"
#include "edagepp/error.hpp"
#include "edagepp/rng.hpp"
#include "fixtures.hpp"

using namespace edagepp;

TEST_CASE("straight path has no subspaces and no constraint obstacles") {
  const PathPolyline p = fixtures::straight_path({10, 32}, {50, 32});
  CHECK(find_subspaces(p, 3 * p.spacing).empty());
  Rng rng(1);
  CHECK(set_obstacles(p, 3.0, rng).empty());
}

TEST_CASE("U-shaped path has one subspace across the opening") {
  const PathPolyline p = fixtures::u_path();
  const std::vector<Subspace> subs = find_subspaces(p, 3 * p.spacing);
  REQUIRE(subs.size() == 1);
  const Subspace& s = subs[0];
  CHECK(std::abs(std::abs(s.dir_z.x) - 1.0) <= 1e-12);
  CHECK(std::abs(s.dir_z.y) <= 1e-12);
  CHECK(std::abs(s.dir_n.x) <= 1e-12);
  CHECK(s.dir_n.y == doctest::Approx(-1.0));  // into the pocket, toward y = 20
  CHECK(std::abs(dot(s.dir_z, s.dir_n)) <= 1e-12);
  CHECK(std::abs(s.width - 20.0) <= 1e-9);
  // boundary points lie between the chord and the far side of the pocket
  for (Point2 q : s.boundary) {
    CHECK(q.x >= 20 - 1e-9);
    CHECK(q.x <= 44 + 1e-9);
    CHECK(q.y < 40);
  }
  // the chain starts in the middle of the flat bottom
  CHECK(std::abs(s.boundary[s.deepest].x - 32.0) <= p.spacing);
}

TEST_CASE("subspace_frame rejects degenerate pockets") {
  Subspace s;
  s.anchor_f = s.anchor_g = {1, 1};
  s.boundary = {{2, 2}};
  CHECK_THROWS_AS(subspace_frame(s), DegenerateSubspace);
  s.anchor_g = {3, 1};
  s.boundary.clear();
  CHECK_THROWS_AS(subspace_frame(s), DegenerateSubspace);
}

TEST_CASE("collision_free boundary cases") {
  const PathPolyline p = fixtures::straight_path({0, 0}, {10, 0}, 11);
  CHECK_FALSE(collision_free(p, Obstacle{1.0, {5, 0}}, 3.0));
  CHECK(collision_free(p, Obstacle{1.0, {5, 5}}, 3.0));  // 1 + 3 + 1
  CHECK(collision_free(p, Obstacle{1.0, {5, 4}}, 3.0));  // exactly radius + c
  CHECK_FALSE(collision_free(p, Obstacle{1.0, {5, 3.999}}, 3.0));
}

TEST_CASE("constraint obstacles on the U keep clearance, the wall chain blocks the shortcut") {
  const PathPolyline p = fixtures::u_path();
  const std::vector<Subspace> subs = find_subspaces(p, 3 * p.spacing);
  for (ChainMode mode : {ChainMode::Wall, ChainMode::Paper}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      ConstraintConfig cfg;
      cfg.mode = mode;
      PlacementStats st;
      const std::vector<Obstacle> obs = place_constraint_obstacles(p, 3.0, subs, rng, cfg, &st);
      REQUIRE_FALSE(obs.empty());
      for (const Obstacle& o : obs) {
        CHECK(o.radius > 0);
        CHECK(o.role == ObstacleRole::Constraint);
        CHECK(point_polyline_distance(o.center, p.points) - o.radius >= 3.0 - 1e-9);
      }
      bool blocked = false;
      for (const Obstacle& o : obs)
        if (point_segment_distance(o.center, {20, 40}, {44, 40}) < o.radius) blocked = true;
      // Alg. 3 as written starts c inside the chord, so only the wall chain is
      // guaranteed to cross it
      if (mode == ChainMode::Wall) CHECK(blocked);
      if (mode == ChainMode::Paper && st.stalled == 0) {
        double diam = 0;
        for (const Obstacle& o : obs) diam += 2 * o.radius;
        CHECK(diam >= 2 * subs[0].width);
      }
    }
  }
}

TEST_CASE("constraint placement is deterministic") {
  const PathPolyline p = fixtures::u_path();
  Rng a(5), b(5);
  CHECK(set_obstacles(p, 3.0, a) == set_obstacles(p, 3.0, b));
}

TEST_CASE("constraint obstacles on generated paths keep clearance") {
  PathGenConfig cfg;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const PathPolyline p = generate_path(cfg, rng);
    for (const Obstacle& o : set_obstacles(p, 3.0, rng))
      CHECK(collision_free(p, o, 3.0));
  }
}
