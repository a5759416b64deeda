#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "hocomp/coefficient.hpp"
#include "hocomp/geometry.hpp"

namespace hocomp {

struct SolverOptions;

/// Piecewise-linear curve. Consecutive duplicate vertices are dropped, so a
/// single remaining vertex denotes a constant curve.
class Path {
 public:
  explicit Path(std::vector<Point2> vertices);
  static Path segment(Point2 a, Point2 b) { return Path({a, b}); }

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point2 front() const { return vertices_.front(); }
  Point2 back() const { return vertices_.back(); }

  double euclidean_length() const;
  Point2 at_arclength(double s) const;
  Path scaled(double factor) const;

 private:
  std::vector<Point2> vertices_;
};

/// F_{p,eps}(path) for a path in folded coordinates. +inf when a hard
/// obstacle is crossed over positive length.
double length_functional(const InclusionShape& shape, const MetricParams& params, const Path& path);

/// Same functional for a path already in unfolded coordinates.
double length_functional(const Medium& medium, const Path& path);

/// Moves xi onto the closure of eps * Omega_w: identity on matrix points,
/// otherwise the nearest boundary point of the containing scaled inclusion.
Point2 snap_to_matrix(const InclusionShape& shape, double epsilon, Point2 xi);

/// Replaces every excursion into a scaled inclusion by the shorter boundary
/// walk between its entry and exit points.
Path push_to_walls(const InclusionShape& shape, double epsilon, const Path& path,
                   int segments_per_boundary = 64);

/// Splits the path at M+1 equally spaced arclength stations and joins
/// consecutive stations by computed geodesics.
Path piecewise_geodesic_refine(const InclusionShape& shape, const MetricParams& params,
                               const Path& path, int pieces, const SolverOptions& options);

/// One vertex per row: "x,y".
void write_path_csv(const Path& path, std::ostream& os);

}  // namespace hocomp
