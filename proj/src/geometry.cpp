#include "hocomp/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numbers>

#include "hocomp/error.hpp"

namespace hocomp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double polar_angle(Point2 d) {
  double a = std::atan2(d.y, d.x);
  if (a < 0.0) a += kTwoPi;
  return a;
}

Point2 closest_on_segment(Point2 a, Point2 b, Point2 x) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(x - a, d) / len2, 0.0, 1.0);
  return a + d * t;
}

Point2 outward_normal(Point2 a, Point2 b) {
  const Point2 e = b - a;
  return Point2{e.y, -e.x} / norm(e);
}

double wrap(double s, double period) {
  s = std::fmod(s, period);
  if (s < 0.0) s += period;
  return s;
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::not_on_boundary: return "point not on boundary";
    case ErrorCode::endpoint_in_obstacle: return "endpoint in obstacle";
    case ErrorCode::disconnected: return "disconnected";
    case ErrorCode::resource_limit: return "resource limit";
    case ErrorCode::internal: return "internal error";
  }
  return "unknown";
}

InclusionShape InclusionShape::disk(Point2 center, double radius) {
  require(std::isfinite(center.x) && std::isfinite(center.y), "disk center must be finite");
  require(radius > 0.0 && std::isfinite(radius), "disk radius must be positive");
  InclusionShape s;
  s.kind_ = ShapeKind::disk;
  s.center_ = center;
  s.radius_ = radius;
  s.perimeter_ = kTwoPi * radius;
  s.margin_ = std::min({center.x - radius, 1.0 - center.x - radius, center.y - radius,
                        1.0 - center.y - radius});
  require(s.margin_ > 0.0, "disk must lie strictly inside the unit cell");
  return s;
}

InclusionShape InclusionShape::square(Point2 center, double half_side) {
  require(half_side > 0.0 && std::isfinite(half_side), "square half_side must be positive");
  const double h = half_side;
  InclusionShape s = polygon({{center.x - h, center.y - h},
                              {center.x + h, center.y - h},
                              {center.x + h, center.y + h},
                              {center.x - h, center.y + h}});
  s.kind_ = ShapeKind::square;
  s.half_side_ = half_side;
  s.center_ = center;
  return s;
}

InclusionShape InclusionShape::polygon(std::vector<Point2> vertices_ccw) {
  require(vertices_ccw.size() >= 3, "polygon needs at least 3 vertices");
  InclusionShape s;
  s.kind_ = ShapeKind::polygon;
  s.vertices_ = std::move(vertices_ccw);
  s.finish_polygon();
  return s;
}

void InclusionShape::finish_polygon() {
  const std::size_t n = vertices_.size();
  double area2 = 0.0;
  Point2 c{};
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    require(std::isfinite(a.x) && std::isfinite(a.y), "polygon vertices must be finite");
    const double w = cross(a, b);
    area2 += w;
    c = c + (a + b) * w;
  }
  require(area2 > 0.0, "polygon vertices must be counterclockwise with positive area");
  center_ = c / (3.0 * area2);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    const Point2 d = vertices_[(i + 2) % n];
    require(cross(b - a, d - b) > 0.0, "polygon must be strictly convex");
  }
  cumulative_.assign(n + 1, 0.0);
  margin_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    cumulative_[i + 1] = cumulative_[i] + distance(vertices_[i], vertices_[(i + 1) % n]);
    const Point2 v = vertices_[i];
    margin_ = std::min({margin_, v.x, 1.0 - v.x, v.y, 1.0 - v.y});
  }
  perimeter_ = cumulative_[n];
  require(margin_ > 0.0, "polygon must lie strictly inside the unit cell");
}

double InclusionShape::diameter() const {
  if (kind_ == ShapeKind::disk) return 2.0 * radius_;
  double d = 0.0;
  for (const Point2 a : vertices_)
    for (const Point2 b : vertices_) d = std::max(d, distance(a, b));
  return d;
}

bool InclusionShape::contains(Point2 x) const {
  if (kind_ == ShapeKind::disk) {
    const Point2 d = x - center_;
    return dot(d, d) < radius_ * radius_;
  }
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    if (cross(b - a, x - a) <= 0.0) return false;
  }
  return true;
}

bool InclusionShape::periodic_contains(Point2 x) const { return contains(x - cell_of(x)); }

double InclusionShape::signed_distance(Point2 x) const {
  if (kind_ == ShapeKind::disk) return distance(x, center_) - radius_;
  const std::size_t n = vertices_.size();
  double max_plane = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    max_plane = std::max(max_plane, dot(outward_normal(a, b), x - a));
  }
  if (max_plane < 0.0) return max_plane;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, distance(x, closest_on_segment(vertices_[i], vertices_[(i + 1) % n], x)));
  }
  return best;
}

Point2 InclusionShape::boundary_point_toward(Point2 x) const {
  if (kind_ == ShapeKind::disk) {
    const Point2 d = x - center_;
    const double len = norm(d);
    if (len < 1e-15) return {center_.x + radius_, center_.y};
    return center_ + d * (radius_ / len);
  }
  const std::size_t n = vertices_.size();
  std::vector<std::pair<double, Point2>> candidates;
  candidates.reserve(n);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 q = closest_on_segment(vertices_[i], vertices_[(i + 1) % n], x);
    const double d = distance(q, x);
    candidates.emplace_back(d, q);
    best = std::min(best, d);
  }
  if (best < 1e-15) {
    for (const auto& [d, q] : candidates)
      if (d == best) return q;
  }
  Point2 chosen{};
  double chosen_angle = std::numeric_limits<double>::infinity();
  for (const auto& [d, q] : candidates) {
    if (d > best + 1e-12) continue;
    const double ang = polar_angle(q - x);
    if (ang < chosen_angle) {
      chosen_angle = ang;
      chosen = q;
    }
  }
  return chosen;
}

double InclusionShape::boundary_coordinate(Point2 p) const {
  if (kind_ == ShapeKind::disk) return radius_ * polar_angle(p - center_);
  const std::size_t n = vertices_.size();
  double best = std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    const Point2 q = closest_on_segment(a, b, p);
    const double d = distance(q, p);
    if (d < best) {
      best = d;
      s = cumulative_[i] + distance(a, q);
    }
  }
  return wrap(s, perimeter_);
}

Point2 InclusionShape::boundary_at(double s) const {
  s = wrap(s, perimeter_);
  if (kind_ == ShapeKind::disk) {
    const double a = s / radius_;
    return center_ + Point2{std::cos(a), std::sin(a)} * radius_;
  }
  const std::size_t n = vertices_.size();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0), n - 1);
  const Point2 a = vertices_[i];
  const Point2 b = vertices_[(i + 1) % n];
  const double len = cumulative_[i + 1] - cumulative_[i];
  return a + (b - a) * ((s - cumulative_[i]) / len);
}

double InclusionShape::boundary_geodesic_length(Point2 a, Point2 b) const {
  if (std::abs(signed_distance(a)) > kBoundaryTolerance ||
      std::abs(signed_distance(b)) > kBoundaryTolerance) {
    fail(ErrorCode::not_on_boundary, "boundary_geodesic_length: point is not on the boundary");
  }
  const double d = std::abs(boundary_coordinate(a) - boundary_coordinate(b));
  return std::min(d, perimeter_ - d);
}

std::vector<Point2> InclusionShape::boundary_walk(Point2 a, Point2 b,
                                                  int segments_per_boundary) const {
  std::vector<Point2> out{a};
  if (kind_ == ShapeKind::disk) {
    const double ta = polar_angle(a - center_);
    double delta = polar_angle(b - center_) - ta;
    if (delta > std::numbers::pi) delta -= kTwoPi;
    if (delta <= -std::numbers::pi) delta += kTwoPi;
    const double max_step = kTwoPi / std::max(segments_per_boundary, 1);
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(delta) / max_step - 1e-12)));
    const double step = delta / pieces;
    if (std::abs(delta) > 0.0) {
      // Corners sit on tangent intersections, nudged outward.
      const double r = radius_ / std::cos(0.5 * step) * (1.0 + 1e-9);
      for (int i = 0; i < pieces; ++i) {
        const double ang = ta + (i + 0.5) * step;
        out.push_back(center_ + Point2{std::cos(ang), std::sin(ang)} * r);
      }
    }
    out.push_back(b);
    return out;
  }
  const std::size_t n = vertices_.size();
  const double sa = boundary_coordinate(a);
  const double sb = boundary_coordinate(b);
  const double forward = wrap(sb - sa, perimeter_);
  if (forward <= perimeter_ - forward) {
    // vertices with coordinate in (sa, sa + forward), in increasing order
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t i = k % n;
      const double rel = wrap(cumulative_[i] - sa, perimeter_);
      if (rel > 0.0 && rel < forward) out.push_back(vertices_[i]);
    }
    std::sort(out.begin() + 1, out.end(), [&](Point2 p, Point2 q) {
      return wrap(boundary_coordinate(p) - sa, perimeter_) <
             wrap(boundary_coordinate(q) - sa, perimeter_);
    });
  } else {
    const double backward = perimeter_ - forward;
    for (std::size_t i = 0; i < n; ++i) {
      const double rel = wrap(sa - cumulative_[i], perimeter_);
      if (rel > 0.0 && rel < backward) out.push_back(vertices_[i]);
    }
    std::sort(out.begin() + 1, out.end(), [&](Point2 p, Point2 q) {
      return wrap(sa - boundary_coordinate(p), perimeter_) <
             wrap(sa - boundary_coordinate(q), perimeter_);
    });
  }
  out.push_back(b);
  return out;
}

std::optional<SegmentInterval> InclusionShape::inside_interval(Point2 a, Point2 b) const {
  const Point2 d = b - a;
  if (kind_ == ShapeKind::disk) {
    const double re = radius_ - kContactTolerance;
    const Point2 f = a - center_;
    const double qa = dot(d, d);
    if (qa == 0.0) return std::nullopt;
    const double qb = dot(f, d);
    const double qc = dot(f, f) - re * re;
    const double disc = qb * qb - qa * qc;
    if (disc <= 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double t0 = std::max((-qb - root) / qa, 0.0);
    const double t1 = std::min((-qb + root) / qa, 1.0);
    if (t1 <= t0) return std::nullopt;
    return SegmentInterval{t0, t1};
  }
  double lo = 0.0;
  double hi = 1.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 v = vertices_[i];
    const Point2 nrm = outward_normal(v, vertices_[(i + 1) % n]);
    const double g0 = dot(nrm, a - v) + kContactTolerance;
    const double gd = dot(nrm, d);
    if (gd == 0.0) {
      if (g0 >= 0.0) return std::nullopt;
    } else if (gd > 0.0) {
      hi = std::min(hi, -g0 / gd);
    } else {
      lo = std::max(lo, -g0 / gd);
    }
    if (hi <= lo) return std::nullopt;
  }
  return SegmentInterval{lo, hi};
}

std::string InclusionShape::describe() const {
  char buf[160];
  switch (kind_) {
    case ShapeKind::disk:
      std::snprintf(buf, sizeof buf, "disk(center=(%g,%g), radius=%g)", center_.x, center_.y,
                    radius_);
      return buf;
    case ShapeKind::square:
      std::snprintf(buf, sizeof buf, "square(center=(%g,%g), half_side=%g)", center_.x,
                    center_.y, half_side_);
      return buf;
    case ShapeKind::polygon:
      break;
  }
  std::string s = "polygon(";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s(%g,%g)", i ? ", " : "", vertices_[i].x, vertices_[i].y);
    s += buf;
  }
  return s + ")";
}

double periodic_signed_distance(const InclusionShape& shape, Point2 x) {
  const Point2 k = cell_of(x);
  const Point2 local = x - k;
  const double own = shape.signed_distance(local);
  if (own <= 0.0) return own;
  double best = own;
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx == 0 && dy == 0) continue;
      best = std::min(best, shape.signed_distance(local - Point2{double(dx), double(dy)}));
    }
  return best;
}

std::vector<TranslateInterval> periodic_inside_intervals(const InclusionShape& shape, Point2 a,
                                                         Point2 b) {
  std::vector<TranslateInterval> out;
  const Point2 d = b - a;
  if (d.x == 0.0 && d.y == 0.0) return out;
  const long ky_lo = static_cast<long>(std::floor(std::min(a.y, b.y)));
  const long ky_hi = static_cast<long>(std::floor(std::max(a.y, b.y)));
  for (long ky = ky_lo; ky <= ky_hi; ++ky) {
    double t0 = 0.0;
    double t1 = 1.0;
    if (d.y != 0.0) {
      double ta = (double(ky) - a.y) / d.y;
      double tb = (double(ky + 1) - a.y) / d.y;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(ta, 0.0);
      t1 = std::min(tb, 1.0);
      if (t1 < t0) continue;
    }
    const double xa = a.x + t0 * d.x;
    const double xb = a.x + t1 * d.x;
    const long kx_lo = static_cast<long>(std::floor(std::min(xa, xb)));
    const long kx_hi = static_cast<long>(std::floor(std::max(xa, xb)));
    for (long kx = kx_lo; kx <= kx_hi; ++kx) {
      const Point2 k{double(kx), double(ky)};
      if (auto iv = shape.inside_interval(a - k, b - k)) out.push_back({k, *iv});
    }
  }
  std::sort(out.begin(), out.end(), [](const TranslateInterval& p, const TranslateInterval& q) {
    return p.interval.t_begin < q.interval.t_begin;
  });
  return out;
}

double periodic_inside_length(const InclusionShape& shape, Point2 a, Point2 b) {
  double frac = 0.0;
  for (const auto& ti : periodic_inside_intervals(shape, a, b))
    frac += ti.interval.t_end - ti.interval.t_begin;
  return frac * distance(a, b);
}

}  // namespace hocomp
