#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace hocomp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

/// Integer translate of the unit cell containing x.
inline Point2 cell_of(Point2 x) { return {std::floor(x.x), std::floor(x.y)}; }

/// Parameter interval (t_begin, t_end) of a segment a + t (b - a), t in [0,1].
struct SegmentInterval {
  double t_begin = 0.0;
  double t_end = 0.0;
};

enum class ShapeKind { disk, square, polygon };

/// Convex open inclusion strictly inside the unit cell (0,1)^2.
///
/// Squares are stored as 4-vertex polygons; the kind is kept for reporting.
/// Boundary points are addressed by an arclength coordinate measured
/// counterclockwise from a fixed start: the angle-0 point for disks and
/// vertex 0 for polygons.
class InclusionShape {
 public:
  static InclusionShape disk(Point2 center, double radius);
  static InclusionShape square(Point2 center, double half_side);
  static InclusionShape polygon(std::vector<Point2> vertices_ccw);

  ShapeKind kind() const { return kind_; }
  Point2 center() const { return center_; }
  double radius() const { return radius_; }
  double half_side() const { return half_side_; }
  const std::vector<Point2>& vertices() const { return vertices_; }

  /// Distance from the closed shape to the unit-cell boundary (> 0).
  double margin() const { return margin_; }
  double perimeter() const { return perimeter_; }
  double diameter() const;
  Point2 centroid() const { return center_; }

  bool contains(Point2 x) const;
  bool periodic_contains(Point2 x) const;
  double signed_distance(Point2 x) const;

  /// Nearest boundary point; equidistant candidates resolve to the one whose
  /// direction from x has the smallest polar angle in [0, 2pi).
  Point2 boundary_point_toward(Point2 x) const;

  /// Shorter boundary path length between two boundary points.
  double boundary_geodesic_length(Point2 a, Point2 b) const;

  double boundary_coordinate(Point2 on_boundary) const;
  Point2 boundary_at(double s) const;

  /// Vertices of the shorter boundary walk from a to b, both included. Disk
  /// arcs are replaced by a circumscribed polyline with at most
  /// segments_per_boundary pieces per full turn, so the walk never enters
  /// the open shape; polygon walks are exact.
  std::vector<Point2> boundary_walk(Point2 a, Point2 b, int segments_per_boundary) const;

  /// Part of segment [a,b] lying strictly inside this cell's shape, shrunk by
  /// kContactTolerance so that tangent or boundary-hugging segments register
  /// no interior length.
  std::optional<SegmentInterval> inside_interval(Point2 a, Point2 b) const;

  std::string describe() const;

  static constexpr double kContactTolerance = 1e-12;
  static constexpr double kBoundaryTolerance = 1e-9;

 private:
  InclusionShape() = default;
  void finish_polygon();

  ShapeKind kind_ = ShapeKind::disk;
  Point2 center_;
  double radius_ = 0.0;
  double half_side_ = 0.0;
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;  // arclength at each vertex
  double perimeter_ = 0.0;
  double margin_ = 0.0;
};

/// Signed distance to the tiled set Omega_g + Z^2.
double periodic_signed_distance(const InclusionShape& shape, Point2 x);

/// Total length of segment [a,b] inside Omega_g + Z^2.
double periodic_inside_length(const InclusionShape& shape, Point2 a, Point2 b);

struct TranslateInterval {
  Point2 cell;
  SegmentInterval interval;
};

/// Inside intervals of [a,b] against every translate it crosses, ordered by
/// t_begin. Translates are disjoint, so the intervals are too.
std::vector<TranslateInterval> periodic_inside_intervals(const InclusionShape& shape, Point2 a,
                                                         Point2 b);

}  // namespace hocomp
