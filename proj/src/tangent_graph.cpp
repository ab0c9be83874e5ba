#include "edagepp/tangent_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace edagepp {

namespace {

constexpr double kTangentEps = 1e-9;

struct ArcPoint {
  double angle;
  int node;
};

struct TangentGraph {
  std::span<const Disc> discs;
  std::vector<Point2> nodes;
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<std::vector<ArcPoint>> on_disc;

  int add_node(Point2 p) {
    nodes.push_back(p);
    adj.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }

  bool inside_any(Point2 p, int skip_a = -1, int skip_b = -1) const {
    for (int k = 0; k < static_cast<int>(discs.size()); ++k) {
      if (k == skip_a || k == skip_b) continue;
      if (distance(p, discs[k].center) < discs[k].radius - kTangentEps) return true;
    }
    return false;
  }

  bool segment_clear(Point2 a, Point2 b, int skip_a = -1, int skip_b = -1) const {
    for (int k = 0; k < static_cast<int>(discs.size()); ++k) {
      if (k == skip_a || k == skip_b) continue;
      if (point_segment_distance(discs[k].center, a, b) < discs[k].radius - kTangentEps) return false;
    }
    return true;
  }

  // Adds a node on disc i at `p` unless another disc swallows it.
  int attach(int i, Point2 p) {
    if (inside_any(p, i)) return -1;
    const int id = add_node(p);
    const Vec2 d = p - discs[i].center;
    on_disc[i].push_back({std::atan2(d.y, d.x), id});
    return id;
  }

  void link(int a, int b, double w) {
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
  }

  // Segment from a (on disc i, or a free point when i < 0) to b (disc j).
  void add_segment(Point2 a, int i, Point2 b, int j, int fixed_a = -1, int fixed_b = -1) {
    if (!segment_clear(a, b, i, j)) return;
    // Own discs: the segment is tangent, so only its interior could enter them
    // numerically; the tangency construction already guarantees it does not.
    const int na = fixed_a >= 0 ? fixed_a : attach(i, a);
    if (na < 0) return;
    const int nb = fixed_b >= 0 ? fixed_b : attach(j, b);
    if (nb < 0) return;
    link(na, nb, distance(a, b));
  }
};

// Tangent points on circle (o, r) seen from p outside it.
bool point_tangents(Point2 p, const Disc& d, Point2& t1, Point2& t2) {
  const Vec2 v = p - d.center;
  const double dist = norm(v);
  if (dist < d.radius) return false;
  const double base = std::atan2(v.y, v.x);
  const double spread = std::acos(std::clamp(d.radius / dist, -1.0, 1.0));
  t1 = d.center + Vec2{std::cos(base + spread), std::sin(base + spread)} * d.radius;
  t2 = d.center + Vec2{std::cos(base - spread), std::sin(base - spread)} * d.radius;
  return true;
}

// Blocked angular intervals of circle i, as (centre angle, half width).
std::vector<std::pair<double, double>> blocked_arcs(std::span<const Disc> discs, int i, bool& fully_blocked) {
  std::vector<std::pair<double, double>> out;
  fully_blocked = false;
  const Disc& a = discs[i];
  for (int k = 0; k < static_cast<int>(discs.size()); ++k) {
    if (k == i) continue;
    const Disc& b = discs[k];
    const double d = distance(a.center, b.center);
    if (d >= a.radius + b.radius) continue;
    if (d + a.radius <= b.radius) {
      fully_blocked = true;
      return out;
    }
    if (d + b.radius <= a.radius) continue;
    const double cosw = (a.radius * a.radius + d * d - b.radius * b.radius) / (2.0 * a.radius * d);
    const double half = std::acos(std::clamp(cosw, -1.0, 1.0));
    out.emplace_back(std::atan2(b.center.y - a.center.y, b.center.x - a.center.x), half);
  }
  return out;
}

bool arc_blocked(double from, double sweep, const std::vector<std::pair<double, double>>& blocked) {
  // Arc runs counter-clockwise from `from` over `sweep` radians.
  for (const auto& [centre, half] : blocked) {
    // Distance from the arc's midpoint to the blocked interval centre.
    const double mid = from + 0.5 * sweep;
    const double gap = std::abs(normalize_angle(centre - mid));
    if (gap < 0.5 * sweep + half - kTangentEps) return true;
  }
  return false;
}

}  // namespace

double tangent_graph_shortest(Point2 start, Point2 goal, std::span<const Disc> discs) {
  TangentGraph g;
  g.discs = discs;
  g.on_disc.resize(discs.size());
  if (g.inside_any(start) || g.inside_any(goal)) return std::numeric_limits<double>::infinity();
  const int s = g.add_node(start), t = g.add_node(goal);
  if (g.segment_clear(start, goal)) g.link(s, t, distance(start, goal));

  const int n = static_cast<int>(discs.size());
  for (int i = 0; i < n; ++i) {
    Point2 t1, t2;
    for (const auto& [p, id] : {std::pair{start, s}, std::pair{goal, t}}) {
      if (!point_tangents(p, discs[i], t1, t2)) continue;
      g.add_segment(p, -1, t1, i, id);
      g.add_segment(p, -1, t2, i, id);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Disc& a = discs[i];
      const Disc& b = discs[j];
      const Vec2 v = b.center - a.center;
      const double d = norm(v);
      if (d <= std::abs(a.radius - b.radius) || d == 0.0) continue;
      const double base = std::atan2(v.y, v.x);
      // Outer tangents: both discs on the same side.
      const double outer = std::acos(std::clamp((a.radius - b.radius) / d, -1.0, 1.0));
      for (double sgn : {1.0, -1.0}) {
        const Vec2 u{std::cos(base + sgn * outer), std::sin(base + sgn * outer)};
        g.add_segment(a.center + u * a.radius, i, b.center + u * b.radius, j);
      }
      if (d > a.radius + b.radius) {
        const double inner = std::acos(std::clamp((a.radius + b.radius) / d, -1.0, 1.0));
        for (double sgn : {1.0, -1.0}) {
          const Vec2 u{std::cos(base + sgn * inner), std::sin(base + sgn * inner)};
          g.add_segment(a.center + u * a.radius, i, b.center - u * b.radius, j);
        }
      }
    }

  for (int i = 0; i < n; ++i) {
    auto& pts = g.on_disc[i];
    if (pts.size() < 2) continue;
    bool fully = false;
    const auto blocked = blocked_arcs(discs, i, fully);
    if (fully) continue;
    std::sort(pts.begin(), pts.end(), [](const ArcPoint& x, const ArcPoint& y) { return x.angle < y.angle; });
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const ArcPoint& a = pts[k];
      const ArcPoint& b = pts[(k + 1) % pts.size()];
      double sweep = b.angle - a.angle;
      if (k + 1 == pts.size()) sweep += 2.0 * std::numbers::pi;
      if (sweep <= 0.0 && k + 1 != pts.size()) {
        g.link(a.node, b.node, 0.0);
        continue;
      }
      if (!arc_blocked(a.angle, sweep, blocked)) g.link(a.node, b.node, discs[i].radius * sweep);
    }
  }

  std::vector<double> dist(g.nodes.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == t) return d;
    for (const auto& [v, w] : g.adj[u])
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.emplace(dist[v], v);
      }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace edagepp
