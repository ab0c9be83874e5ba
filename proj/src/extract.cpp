#include "edagepp/extract.hpp"

#include <algorithm>
#include <cmath>

#include "edagepp/error.hpp"

namespace edagepp {

void ProbabilityMap::validate() const {
  if (width < 0 || height < 0 || values.size() != std::size_t(width) * height)
    throw DegenerateInput("probability map size mismatch");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) throw DegenerateInput("probability outside [0, 1]");
}

ProbabilityMap probability_from_mask(const RasterMask& mask) {
  ProbabilityMap m(mask.width, mask.height);
  for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] = mask.bits[i] ? 1.0 : 0.0;
  return m;
}

ProbabilityMap gaussian_blur(const ProbabilityMap& m, double sigma) {
  if (!(sigma > 0.0)) throw DegenerateInput("sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));

  auto pass = [&](const ProbabilityMap& in, bool horizontal) {
    ProbabilityMap out(in.width, in.height);
    for (int row = 0; row < in.height; ++row)
      for (int col = 0; col < in.width; ++col) {
        double acc = 0.0, wsum = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const int c = horizontal ? col + k : col, r = horizontal ? row : row + k;
          if (!in.in_bounds(c, r)) continue;
          acc += kernel[k + radius] * in.at(c, r);
          wsum += kernel[k + radius];
        }
        out.at(col, row) = acc / wsum;
      }
    return out;
  };
  ProbabilityMap out = pass(pass(m, true), false);
  const double peak = out.values.empty() ? 0.0 : *std::max_element(out.values.begin(), out.values.end());
  if (peak > 0.0)
    for (double& v : out.values) v = std::min(1.0, v / peak);
  return out;
}

std::vector<PixelCoord> extract_waypoints(const ProbabilityMap& m, PixelCoord start, PixelCoord goal,
                                          std::size_t max_steps) {
  if (!m.in_bounds(start.col, start.row) || !m.in_bounds(goal.col, goal.row))
    throw DegenerateInput("start or goal outside the map");
  if (m.values.size() != std::size_t(m.width) * m.height) throw DegenerateInput("probability map size mismatch");

  static constexpr int kDc[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  static constexpr int kDr[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

  std::vector<PixelCoord> path{start};
  if (start == goal) return path;
  std::vector<std::uint8_t> visited(m.values.size(), 0);
  auto mark = [&](PixelCoord p) { visited[std::size_t(p.row) * m.width + p.col] = 1; };
  mark(start);

  PixelCoord cur = start;
  while (true) {
    if (std::abs(cur.col - goal.col) <= 1 && std::abs(cur.row - goal.row) <= 1) {
      if (path.size() + 1 > max_steps) throw StepLimit("path exceeds " + std::to_string(max_steps) + " pixels");
      path.push_back(goal);
      return path;
    }
    int pick = -1;
    double best = 0.0;
    for (int k = 0; k < 8; ++k) {
      const int c = cur.col + kDc[k], r = cur.row + kDr[k];
      if (!m.in_bounds(c, r) || visited[std::size_t(r) * m.width + c]) continue;
      const double v = m.at(c, r);
      if (v > best) {
        best = v;
        pick = k;
      }
    }
    if (pick < 0)
      throw DeadEnd("no unvisited neighbour with positive probability at (" + std::to_string(cur.col) + ", " +
                    std::to_string(cur.row) + ")");
    if (path.size() + 1 > max_steps) throw StepLimit("path exceeds " + std::to_string(max_steps) + " pixels");
    cur = {cur.col + kDc[pick], cur.row + kDr[pick]};
    mark(cur);
    path.push_back(cur);
  }
}

double path_cost(std::span<const Point2> path) { return polyline_length(path); }

std::vector<Point2> pixels_to_world(std::span<const PixelCoord> pixels, const PixelTransform& t) {
  std::vector<Point2> out;
  out.reserve(pixels.size());
  for (const PixelCoord& p : pixels) out.push_back(t.pixel_center_world(p.col, p.row));
  return out;
}

std::vector<Point2> decimate(std::span<const Point2> path, std::size_t stride) {
  if (stride == 0) throw DegenerateInput("stride must be >= 1");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < path.size(); i += stride) out.push_back(path[i]);
  if (!path.empty() && (path.size() - 1) % stride != 0) out.push_back(path.back());
  return out;
}

std::vector<PixelCoord> prune_detours(std::span<const PixelCoord> pixels) {
  std::vector<PixelCoord> out;
  for (std::size_t i = 0; i < pixels.size();) {
    out.push_back(pixels[i]);
    std::size_t next = i + 1;
    for (std::size_t j = pixels.size(); j-- > i + 1;)
      if (std::abs(pixels[j].col - pixels[i].col) <= 1 && std::abs(pixels[j].row - pixels[i].row) <= 1) {
        next = j;
        break;
      }
    i = next;
  }
  return out;
}

std::vector<Point2> walk_to_world(std::span<const PixelCoord> pixels, const PixelTransform& t, Point2 start,
                                  Point2 goal, std::size_t stride) {
  if (pixels.empty()) throw DegenerateInput("empty walk");
  const std::vector<PixelCoord> pruned = prune_detours(pixels);
  std::vector<Point2> out = decimate(pixels_to_world(pruned, t), stride);
  out.front() = start;
  if (out.size() == 1) out.push_back(goal);
  else out.back() = goal;
  return out;
}

ClearanceReport verify_clearance(std::span<const Point2> path, const SceneSpec& scene, double c, double step) {
  if (!(step > 0.0)) throw DegenerateInput("step must be positive");
  ClearanceReport rep;
  auto check = [&](Point2 p) {
    ++rep.samples;
    double margin = std::numeric_limits<double>::infinity();
    for (const Obstacle& o : scene.obstacles) margin = std::min(margin, distance(p, o.center) - o.radius - c);
    rep.min_margin = std::min(rep.min_margin, margin);
    if (margin < 0.0) ++rep.violations;
  };
  if (path.size() == 1) check(path[0]);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Point2 a = path[i], b = path[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / step)));
    for (int k = 0; k < pieces; ++k) check(a + (b - a) * (static_cast<double>(k) / pieces));
  }
  if (path.size() > 1) check(path.back());
  return rep;
}

}  // namespace edagepp
