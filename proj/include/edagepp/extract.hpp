#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "edagepp/geom.hpp"
#include "edagepp/raster.hpp"
#include "edagepp/scene.hpp"

namespace edagepp {

// Per-pixel waypoint probabilities in [0, 1], row-major.
struct ProbabilityMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  ProbabilityMap() = default;
  ProbabilityMap(int w, int h, double fill = 0.0) : width(w), height(h), values(std::size_t(w) * h, fill) {}

  bool in_bounds(int col, int row) const { return col >= 0 && row >= 0 && col < width && row < height; }
  double at(int col, int row) const { return values[std::size_t(row) * width + col]; }
  double& at(int col, int row) { return values[std::size_t(row) * width + col]; }
  // Throws DegenerateInput on a size mismatch or a value outside [0, 1].
  void validate() const;
};

// Mask pixels 255 -> 1.0, 0 -> 0.0.
ProbabilityMap probability_from_mask(const RasterMask& mask);

// Separable Gaussian blur (kernel radius ceil(3 sigma), renormalised at the
// image border), rescaled so the maximum is 1.
ProbabilityMap gaussian_blur(const ProbabilityMap& m, double sigma);

// Greedy walk from start: step to the unvisited 8-neighbour with the largest
// probability, scanning N, NE, E, SE, S, SW, W, NW (N is row - 1) and keeping
// the first maximum. Stops once goal is in the 8-neighbourhood and appends
// goal. Throws DeadEnd when every unvisited neighbour is 0 and StepLimit when
// the path would exceed max_steps pixels.
std::vector<PixelCoord> extract_waypoints(const ProbabilityMap& m, PixelCoord start, PixelCoord goal,
                                          std::size_t max_steps);

// Sum of consecutive Euclidean distances.
double path_cost(std::span<const Point2> path);

// Pixel centers in world coordinates.
std::vector<Point2> pixels_to_world(std::span<const PixelCoord> pixels, const PixelTransform& t);

// Keeps every stride-th point plus the last one.
std::vector<Point2> decimate(std::span<const Point2> path, std::size_t stride);

// Cuts detours out of a walk: from each kept pixel jump to the last later
// pixel that is 8-adjacent to it. Endpoints are kept.
std::vector<PixelCoord> prune_detours(std::span<const PixelCoord> pixels);

// Extracted walk -> world polyline: prune_detours, pixel centers, every
// stride-th point, with the first and last points replaced by start and goal.
std::vector<Point2> walk_to_world(std::span<const PixelCoord> pixels, const PixelTransform& t, Point2 start,
                                  Point2 goal, std::size_t stride = 2);

struct ClearanceReport {
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::size_t samples = 0;
};

// Samples the polyline every `step` world units (plus every vertex) and
// measures distance - radius - c against every obstacle.
ClearanceReport verify_clearance(std::span<const Point2> path, const SceneSpec& scene, double c,
                                 double step = 0.25);

}  // namespace edagepp
