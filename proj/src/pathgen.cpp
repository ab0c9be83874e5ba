#include "edagepp/pathgen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "edagepp/error.hpp"

namespace edagepp {

double PolySegment::evaluate(double x) const {
  double y = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = y * x + *it;
  return y;
}

double PolySegment::derivative(double x) const {
  double dy = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) dy = dy * x + static_cast<double>(k) * coeffs[k];
  return dy;
}

void PathGenConfig::validate() const {
  if (order < 1) throw ConfigError("order must be >= 1");
  if (curves < 1) throw ConfigError("curves must be >= 1");
  if (points_per_curve < 2) throw ConfigError("points_per_curve must be >= 2");
  if (cap_samples < 4) throw ConfigError("cap_samples must be >= 4");
  if (fit_sample_count < order + 1) throw ConfigError("fit_sample_count must be >= order + 1");
  if (!(fit_width > 0.0) || !(fit_height >= 0.0)) throw ConfigError("fit box must be non-empty");
  if (dense_per_curve < 16) throw ConfigError("dense_per_curve must be >= 16");
}

PathPolyline PathPolyline::transformed(const Pose2& pose) const {
  PathPolyline out = *this;
  out.points = apply_pose(points, pose);
  for (Vec2& t : out.tangents) t = pose.apply_vector(t);
  for (Pose2& p : out.segment_poses) p = pose.compose(p);
  return out;
}

std::vector<double> fit_polynomial(std::span<const double> xs, std::span<const double> ys, int order) {
  if (xs.size() != ys.size()) throw SingularFit("xs and ys differ in length");
  const auto m = static_cast<Eigen::Index>(xs.size());
  const Eigen::Index cols = order + 1;
  if (m < cols) throw SingularFit("fewer samples than coefficients");
  Eigen::MatrixXd design(m, cols);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double p = 1.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
      design(i, k) = p;
      p *= xs[i];
    }
    rhs(i) = ys[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw SingularFit("design matrix is rank deficient");
  const Eigen::VectorXd w = qr.solve(rhs);
  return {w.data(), w.data() + w.size()};
}

PolySegment random_poly_segment(const PathGenConfig& cfg, Rng& rng) {
  std::vector<double> xs(cfg.fit_sample_count), ys(cfg.fit_sample_count);
  for (int attempt = 0; attempt < 10; ++attempt) {
    for (int i = 0; i < cfg.fit_sample_count; ++i) {
      xs[i] = rng.uniform(0.0, cfg.fit_width);
      ys[i] = rng.uniform(0.0, cfg.fit_height);
    }
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (!(*hi - *lo > 1e-6 * cfg.fit_width)) continue;
    try {
      return PolySegment{fit_polynomial(xs, ys, cfg.order), *lo, *hi};
    } catch (const SingularFit&) {
    }
  }
  throw SingularFit("no well-conditioned fit after 10 resamples");
}

namespace {

std::vector<double> uniform_grid(int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = static_cast<double>(i) / (count - 1);
  g.back() = 1.0;
  return g;
}

Vec2 unit_tangent(double gradient) { return normalized(Vec2{1.0, gradient}); }

}  // namespace

SegmentSamples sample_segment(const PolySegment& seg, int n, int dense) {
  const double width = seg.x_hi - seg.x_lo;
  ParametricCurve curve = [&](double t) {
    const double x = t >= 1.0 ? seg.x_hi : seg.x_lo + t * width;
    return Point2{x, seg.evaluate(x)};
  };
  const std::vector<double> grid = uniform_grid(std::max(dense, 2));
  EqualChordSamples s = resample_equal_chord(curve, grid, n);
  SegmentSamples out;
  out.points = std::move(s.points);
  out.gradients.reserve(out.points.size());
  for (const Point2& p : out.points) out.gradients.push_back(seg.derivative(p.x));
  return out;
}

PathPolyline concat_segments(std::span<const PolySegment> segments, const PathGenConfig& cfg) {
  if (segments.empty()) throw DegenerateInput("no segments to concatenate");
  const int l = static_cast<int>(segments.size());

  PathPolyline path;
  path.segments.assign(segments.begin(), segments.end());
  path.segment_poses.resize(l);
  for (int i = 1; i < l; ++i) {
    const PolySegment& prev = segments[i - 1];
    const PolySegment& cur = segments[i];
    const Pose2& prev_pose = path.segment_poses[i - 1];
    const double heading = prev_pose.angle + std::atan(prev.derivative(prev.x_hi));
    const double alpha = heading - std::atan(cur.derivative(cur.x_lo));
    const Point2 prev_end = prev_pose.apply({prev.x_hi, prev.evaluate(prev.x_hi)});
    Pose2 pose(alpha, {});
    pose.translation = prev_end - pose.apply_vector({cur.x_lo, cur.evaluate(cur.x_lo)});
    path.segment_poses[i] = pose;
  }

  auto locate = [l](double t, int& k) {
    const double s = t * l;
    k = std::clamp(static_cast<int>(std::floor(s)), 0, l - 1);
    return s - k;
  };
  auto local_x = [&](int k, double u) {
    const PolySegment& seg = segments[k];
    return u >= 1.0 ? seg.x_hi : seg.x_lo + u * (seg.x_hi - seg.x_lo);
  };
  ParametricCurve curve = [&](double t) {
    int k;
    const double u = locate(t, k);
    const double x = local_x(k, u);
    return path.segment_poses[k].apply({x, segments[k].evaluate(x)});
  };

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(l) * cfg.dense_per_curve + 1);
  for (int k = 0; k < l; ++k)
    for (int j = 0; j < cfg.dense_per_curve; ++j)
      grid.push_back((k + static_cast<double>(j) / cfg.dense_per_curve) / l);
  grid.push_back(1.0);

  EqualChordSamples s = resample_equal_chord(curve, grid, l * cfg.points_per_curve);
  path.points = std::move(s.points);
  path.spacing = s.spacing;
  const std::size_t count = path.points.size();
  path.gradients.resize(count);
  path.tangents.resize(count);
  path.segment_of_point.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    int k;
    const double u = locate(s.params[j], k);
    const double g = segments[k].derivative(local_x(k, u));
    path.segment_of_point[j] = k;
    path.gradients[j] = g;
    path.tangents[j] = path.segment_poses[k].apply_vector(unit_tangent(g));
  }
  return path;
}

JunctionErrors junction_errors(const PathPolyline& path) {
  JunctionErrors e;
  for (int i = 1; i < path.segment_count(); ++i) {
    const PolySegment& prev = path.segments[i - 1];
    const PolySegment& cur = path.segments[i];
    const Pose2& pp = path.segment_poses[i - 1];
    const Pose2& cp = path.segment_poses[i];
    const Point2 a = pp.apply({prev.x_hi, prev.evaluate(prev.x_hi)});
    const Point2 b = cp.apply({cur.x_lo, cur.evaluate(cur.x_lo)});
    e.max_gap = std::max(e.max_gap, distance(a, b));
    const Vec2 ta = pp.apply_vector(unit_tangent(prev.derivative(prev.x_hi)));
    const Vec2 tb = cp.apply_vector(unit_tangent(cur.derivative(cur.x_lo)));
    e.max_tangent = std::max(e.max_tangent, std::abs(std::atan2(cross(ta, tb), dot(ta, tb))));
  }
  return e;
}

PathPolyline generate_path(const PathGenConfig& cfg, Rng& rng) {
  cfg.validate();
  for (int attempt = 0; attempt < 10; ++attempt) {
    try {
      std::vector<PolySegment> segments;
      segments.reserve(cfg.curves);
      for (int i = 0; i < cfg.curves; ++i) segments.push_back(random_poly_segment(cfg, rng));
      PathPolyline path = concat_segments(segments, cfg);
      const JunctionErrors je = junction_errors(path);
      if (spacing_spread(path.points) > kTolerances.spacing_relative) continue;
      if (je.max_gap > kTolerances.junction_gap || je.max_tangent > kTolerances.junction_tangent) continue;
      return path;
    } catch (const SingularFit&) {
    } catch (const DegenerateInput&) {
    }
  }
  throw GenerationFailed("path generation exhausted its retries");
}

}  // namespace edagepp
