#include "hocomp/curves.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "hocomp/error.hpp"
#include "hocomp/grid_solver.hpp"

namespace hocomp {

Path::Path(std::vector<Point2> vertices) {
  require(!vertices.empty(), "path needs at least one vertex");
  vertices_.reserve(vertices.size());
  for (const Point2 p : vertices) {
    require(std::isfinite(p.x) && std::isfinite(p.y), "path vertices must be finite");
    if (vertices_.empty() || !(vertices_.back() == p)) vertices_.push_back(p);
  }
}

double Path::euclidean_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) total += distance(vertices_[i - 1], vertices_[i]);
  return total;
}

Point2 Path::at_arclength(double s) const {
  if (s <= 0.0 || vertices_.size() == 1) return vertices_.front();
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const double len = distance(vertices_[i - 1], vertices_[i]);
    if (s <= len) return vertices_[i - 1] + (vertices_[i] - vertices_[i - 1]) * (s / len);
    s -= len;
  }
  return vertices_.back();
}

Path Path::scaled(double factor) const {
  std::vector<Point2> out(vertices_);
  for (Point2& p : out) p = p * factor;
  return Path(std::move(out));
}

double length_functional(const Medium& medium, const Path& path) {
  return medium.polyline_cost(path.vertices());
}

double length_functional(const InclusionShape& shape, const MetricParams& params, const Path& path) {
  params.validate();
  const Medium medium = unfolded_medium(shape, params);
  const double eps = params.epsilon;
  const auto v = path.vertices();
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    // The inside fraction is scale invariant; only the length is folded.
    const double len = distance(v[i - 1], v[i]);
    const double inside = periodic_inside_length(shape, v[i - 1] / eps, v[i] / eps) * eps;
    if (inside <= 0.0) {
      total += len;
    } else if (medium.is_obstacle()) {
      return std::numeric_limits<double>::infinity();
    } else {
      total += (len - inside) + medium.inclusion_weight * inside;
    }
  }
  return total;
}

namespace {

/// Smallest outward nudge that leaves the open inclusion of cell k.
Point2 settle_outside(const InclusionShape& shape, Point2 k, Point2 local_boundary) {
  Point2 p = local_boundary;
  Point2 dir = p - shape.centroid();
  const double len = norm(dir);
  dir = len > 0.0 ? dir / len : Point2{1.0, 0.0};
  double step = 1e-15;
  while (shape.contains(p) || shape.periodic_contains(p + k)) {
    p = local_boundary + dir * step;
    step *= 4.0;
  }
  return p + k;
}

}  // namespace

Point2 snap_to_matrix(const InclusionShape& shape, double epsilon, Point2 xi) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
  const Point2 u = xi / epsilon;
  if (!shape.periodic_contains(u)) return xi;
  const Point2 k = cell_of(u);
  const Point2 local = shape.boundary_point_toward(u - k);
  Point2 result = settle_outside(shape, k, local) * epsilon;
  // Scaling back may round into the inclusion again.
  double nudge = 1e-16;
  const Point2 outward = (local - shape.centroid()) / std::max(norm(local - shape.centroid()), 1e-300);
  while (shape.periodic_contains(result / epsilon)) {
    result = result + outward * (nudge * std::max(1.0, norm(result)));
    nudge *= 4.0;
  }
  if (distance(result, xi) > std::sqrt(2.0) * epsilon * (1.0 + 1e-9))
    fail(ErrorCode::internal, "snap_to_matrix moved a point further than sqrt(2)*eps");
  return result;
}

Path push_to_walls(const InclusionShape& shape, double epsilon, const Path& path,
                   int segments_per_boundary) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
  const auto folded = path.vertices();
  std::vector<Point2> u(folded.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = folded[i] / epsilon;
  if (shape.periodic_contains(u.front()) || shape.periodic_contains(u.back()))
    fail(ErrorCode::invalid_argument, "push_to_walls: path endpoint lies inside an inclusion");

  std::vector<Point2> out{u.front()};
  bool inside = false;
  Point2 cell{};
  Point2 entry{};
  const double sqrt2 = std::sqrt(2.0);

  // Walk vertices are scaled off the boundary so that no segment grazes the
  // open inclusion under rounding.
  const Point2 c = shape.centroid();
  auto lift = [&](Point2 local, Point2 k) {
    const Point2 p = c + (local - c) * (1.0 + 1e-9);
    return shape.contains(p) ? settle_outside(shape, k, local) : p + k;
  };

  auto walk = [&](Point2 from, Point2 to, Point2 k) {
    const Point2 a = shape.boundary_point_toward(from - k);
    const Point2 b = shape.boundary_point_toward(to - k);
    const std::vector<Point2> w = shape.boundary_walk(a, b, segments_per_boundary);
    for (std::size_t i = 1; i < w.size(); ++i) {
      const Point2 p = lift(w[i], k);
      if (distance(p, from) > sqrt2 * (1.0 + 1e-8) || distance(p, to) > sqrt2 * (1.0 + 1e-8))
        fail(ErrorCode::internal, "push_to_walls: boundary walk left the sqrt(2)*eps band");
      out.push_back(p);
    }
  };

  for (std::size_t s = 1; s < u.size(); ++s) {
    const Point2 p = u[s - 1];
    const Point2 q = u[s];
    const Point2 d = q - p;
    for (const TranslateInterval& ti : periodic_inside_intervals(shape, p, q)) {
      if (inside && !(ti.cell == cell)) {
        // Exit was lost to rounding at a vertex; close the excursion at p.
        walk(entry, p, cell);
        inside = false;
      }
      if (!inside) {
        entry = p + d * ti.interval.t_begin;
        out.push_back(lift(shape.boundary_point_toward(entry - ti.cell), ti.cell));
        cell = ti.cell;
      }
      if (ti.interval.t_end < 1.0) {
        walk(entry, p + d * ti.interval.t_end, cell);
        inside = false;
      } else {
        inside = true;
      }
    }
    if (!inside) out.push_back(q);
  }
  if (inside) walk(entry, u.back(), cell), out.push_back(u.back());

  for (Point2& p : out) p = p * epsilon;
  out.front() = folded.front();
  out.back() = folded.back();
  return Path(std::move(out));
}

Path piecewise_geodesic_refine(const InclusionShape& shape, const MetricParams& params,
                               const Path& path, int pieces, const SolverOptions& options) {
  require(pieces >= 1, "piecewise_geodesic_refine needs M >= 1");
  params.validate();
  const double total = path.euclidean_length();
  std::vector<Point2> stations;
  stations.reserve(pieces + 1);
  for (int j = 0; j <= pieces; ++j) {
    Point2 w = path.at_arclength(total * j / pieces);
    if (j > 0 && j < pieces && params.p.is_infinite()) w = snap_to_matrix(shape, params.epsilon, w);
    stations.push_back(w);
  }
  stations.front() = path.front();
  stations.back() = path.back();

  std::vector<Point2> out{stations.front()};
  for (int j = 0; j < pieces; ++j) {
    const DistanceResult r = distance_folded(shape, params, stations[j], stations[j + 1], options);
    const auto v = r.path.vertices();
    out.insert(out.end(), v.begin() + 1, v.end());
    if (v.size() == 1) out.push_back(stations[j + 1]);
  }
  return Path(std::move(out));
}

void write_path_csv(const Path& path, std::ostream& os) {
  char buf[64];
  os << "x,y\n";
  for (const Point2 p : path.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
    os << buf;
  }
}

}  // namespace hocomp
