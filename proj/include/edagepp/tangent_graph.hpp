#pragma once

#include <span>

#include "edagepp/geom.hpp"

namespace edagepp {

struct Disc {
  Point2 center{};
  double radius = 0.0;
};

// Exact shortest path from start to goal in the plane minus the open discs,
// over the tangent visibility graph (bitangent segments plus boundary arcs).
// Touching a disc is allowed. Returns +inf when start or goal lies inside a
// disc or no path exists.
double tangent_graph_shortest(Point2 start, Point2 goal, std::span<const Disc> discs);

}  // namespace edagepp
