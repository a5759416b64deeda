#pragma once

// Reference computations written independently of the library code paths
// they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hocomp/grid_solver.hpp"

namespace oracle {

struct P {
  double x, y;
};

inline double len(P a, P b) { return std::hypot(b.x - a.x, b.y - a.y); }

/// Shortest path from a to b around a disk obstacle when the chord is
/// blocked: tangent segment, arc, tangent segment.
inline double tangent_arc_tangent(P c, double r, P a, P b) {
  const double da = len(a, c), db = len(b, c);
  const double ta = std::sqrt(da * da - r * r), tb = std::sqrt(db * db - r * r);
  const double ang_a = std::atan2(a.y - c.y, a.x - c.x), ang_b = std::atan2(b.y - c.y, b.x - c.x);
  double between = std::abs(ang_a - ang_b);
  if (between > std::numbers::pi) between = 2 * std::numbers::pi - between;
  const double arc = between - std::acos(r / da) - std::acos(r / db);
  return ta + tb + r * arc;
}

/// Length of segment [a,b] inside the open disk (c, r) by the quadratic formula.
inline double chord_in_disk(P a, P b, P c, double r) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double fx = a.x - c.x, fy = a.y - c.y;
  const double A = dx * dx + dy * dy, B = 2 * (fx * dx + fy * dy), C = fx * fx + fy * fy - r * r;
  const double disc = B * B - 4 * A * C;
  if (disc <= 0) return 0.0;
  const double s = std::sqrt(disc);
  const double t0 = std::max(0.0, (-B - s) / (2 * A)), t1 = std::min(1.0, (-B + s) / (2 * A));
  return t1 > t0 ? (t1 - t0) * std::sqrt(A) : 0.0;
}

/// Arc/chord supremum of a closed convex polyline by brute force over a dense
/// uniform sampling of its perimeter.
inline double polygon_arc_chord_sup(const std::vector<P>& v, int per_edge) {
  std::vector<P> pts;
  std::vector<double> s;
  double acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P a = v[i], b = v[(i + 1) % v.size()];
    for (int k = 0; k < per_edge; ++k) {
      const double t = double(k) / per_edge;
      pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      s.push_back(acc + t * len(a, b));
    }
    acc += len(a, b);
  }
  double best = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double arc = std::min(s[j] - s[i], acc - (s[j] - s[i]));
      best = std::max(best, arc / len(pts[i], pts[j]));
    }
  return best;
}

/// Bellman-Ford over the explicit edge list of a field, seeded with the given
/// node costs.
inline std::vector<double> bellman_ford(const hocomp::GridField& field, const std::vector<hocomp::Stub>& sources) {
  struct E {
    std::uint32_t u, v;
    double w;
  };
  std::vector<E> edges;
  for (std::uint32_t u = 0; u < field.node_count(); ++u)
    field.for_each_edge(u, [&](std::uint32_t v, double w) { edges.push_back({u, v, w}); });
  std::vector<double> d(field.node_count(), std::numeric_limits<double>::infinity());
  for (const hocomp::Stub& src : sources) d[src.node] = std::min(d[src.node], src.cost);
  for (std::size_t round = 0; round + 1 < field.node_count(); ++round) {
    bool changed = false;
    for (const E& e : edges)
      if (d[e.u] + e.w < d[e.v]) d[e.v] = d[e.u] + e.w, changed = true;
    if (!changed) break;
  }
  return d;
}

}  // namespace oracle
