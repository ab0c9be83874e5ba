#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edagepp/geom.hpp"
#include "edagepp/rng.hpp"

namespace edagepp {

// y = sum_k coeffs[k] * x^k on [x_lo, x_hi].
struct PolySegment {
  std::vector<double> coeffs;
  double x_lo = 0.0;
  double x_hi = 1.0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  double evaluate(double x) const;
  double derivative(double x) const;
};

struct PathGenConfig {
  int order = 3;                // r
  int curves = 3;               // l
  int points_per_curve = 64;    // n
  int cap_samples = 16;         // n'
  int fit_sample_count = 12;
  double fit_width = 20.0;
  double fit_height = 6.0;
  int dense_per_curve = 512;    // bracket grid for equal-chord sampling
  std::uint64_t seed = 0;

  void validate() const;
};

struct PathPolyline {
  std::vector<Point2> points;
  std::vector<double> gradients;     // dy/dx in the owning segment's local frame
  std::vector<Vec2> tangents;        // unit tangents in the path frame
  std::vector<int> segment_of_point;
  double spacing = 0.0;
  std::vector<Pose2> segment_poses;  // local curve frame -> path frame
  std::vector<PolySegment> segments;

  int segment_count() const { return static_cast<int>(segments.size()); }
  std::size_t size() const { return points.size(); }
  Point2 start() const { return points.front(); }
  Point2 goal() const { return points.back(); }
  double length() const { return polyline_length(points); }

  // Re-expresses the path (points, tangents and segment poses) under `pose`.
  PathPolyline transformed(const Pose2& pose) const;
};

struct SegmentSamples {
  std::vector<Point2> points;
  std::vector<double> gradients;
};

// Least-squares polynomial of the given order through (xs, ys).
// Throws SingularFit when the design matrix is rank deficient.
std::vector<double> fit_polynomial(std::span<const double> xs, std::span<const double> ys, int order);

PolySegment random_poly_segment(const PathGenConfig& cfg, Rng& rng);

SegmentSamples sample_segment(const PolySegment& seg, int n, int dense = 512);

// Rotates and translates each curve so it starts where the previous one ends
// with a matching tangent, then samples l*n equally spaced waypoints on the
// joined curve.
PathPolyline concat_segments(std::span<const PolySegment> segments, const PathGenConfig& cfg);

PathPolyline generate_path(const PathGenConfig& cfg, Rng& rng);

struct JunctionErrors {
  double max_gap = 0.0;
  double max_tangent = 0.0;  // radians
};

JunctionErrors junction_errors(const PathPolyline& path);

}  // namespace edagepp
