#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hocomp/error.hpp"
#include "hocomp/geometry.hpp"
#include "hocomp/parallel.hpp"
#include "oracles.hpp"

using namespace hocomp;

namespace {

const InclusionShape kDisk = InclusionShape::disk({0.5, 0.5}, 0.25);
const InclusionShape kSquare = InclusionShape::square({0.5, 0.5}, 0.2);

bool near(Point2 a, Point2 b, double tol = 1e-12) { return distance(a, b) <= tol; }

}  // namespace

TEST_CASE("signed distance of disk and square") {
  CHECK(kDisk.signed_distance({0.5, 0.5}) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(kDisk.signed_distance({1.0, 0.5}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(kSquare.signed_distance({0.5, 0.85}) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(kSquare.signed_distance({0.5, 0.5}) == doctest::Approx(-0.2).epsilon(1e-12));
  // outside a corner the distance is to the vertex
  CHECK(kSquare.signed_distance({0.8, 0.8}) == doctest::Approx(std::hypot(0.1, 0.1)).epsilon(1e-12));
}

TEST_CASE("boundary projection") {
  CHECK(near(kDisk.boundary_point_toward({0.5, 0.5}), {0.75, 0.5}));
  CHECK(near(kDisk.boundary_point_toward({0.6, 0.5}), {0.75, 0.5}));
  CHECK(near(kSquare.boundary_point_toward({0.5, 0.6}), {0.5, 0.7}));
  CHECK(near(kDisk.boundary_point_toward({0.5, 0.9}), {0.5, 0.75}));
}

TEST_CASE("boundary geodesic lengths") {
  CHECK(kDisk.boundary_geodesic_length({0.75, 0.5}, {0.25, 0.5}) ==
        doctest::Approx(std::numbers::pi * 0.25).epsilon(1e-12));
  CHECK(kSquare.boundary_geodesic_length({0.7, 0.5}, {0.3, 0.5}) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(kDisk.boundary_geodesic_length({0.75, 0.5}, {0.75, 0.5}) == 0.0);
  CHECK_THROWS_AS(kDisk.boundary_geodesic_length({0.5, 0.5}, {0.75, 0.5}), Error);
  try {
    kDisk.boundary_geodesic_length({0.5, 0.5}, {0.75, 0.5});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_on_boundary);
  }
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(InclusionShape::disk({0.5, 0.5}, 0.5), Error);
  CHECK_THROWS_AS(InclusionShape::disk({0.5, 0.5}, -0.1), Error);
  CHECK_THROWS_AS(InclusionShape::square({0.9, 0.5}, 0.2), Error);
  // clockwise order
  CHECK_THROWS_AS(InclusionShape::polygon({{0.3, 0.3}, {0.3, 0.7}, {0.7, 0.7}, {0.7, 0.3}}), Error);
  // non-convex
  CHECK_THROWS_AS(InclusionShape::polygon({{0.2, 0.2}, {0.8, 0.2}, {0.5, 0.4}, {0.8, 0.8}, {0.2, 0.8}}), Error);
  CHECK_NOTHROW(InclusionShape::polygon({{0.2, 0.2}, {0.8, 0.2}, {0.5, 0.8}}));
}

TEST_CASE("open set convention: boundary points are matrix") {
  CHECK_FALSE(kDisk.contains({0.75, 0.5}));
  CHECK(kDisk.contains({0.7499, 0.5}));
  CHECK_FALSE(kSquare.contains({0.7, 0.5}));
  CHECK_FALSE(kDisk.periodic_contains({0.0, 0.0}));
  CHECK(kDisk.periodic_contains({-2.5, 3.5}));
}

TEST_CASE("segment intersection matches the quadratic oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Point2 a{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
    const Point2 b{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
    double expected = 0.0;
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j)
        expected += oracle::chord_in_disk({a.x, a.y}, {b.x, b.y}, {0.5 + i, 0.5 + j}, 0.25);
    CHECK(periodic_inside_length(kDisk, a, b) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("diagonal chord through the disk") {
  const auto iv = kDisk.inside_interval({0, 0}, {1, 1});
  REQUIRE(iv.has_value());
  const double half = std::sqrt(2.0) / 2;
  CHECK(iv->t_begin * std::sqrt(2.0) == doctest::Approx(half - 0.25).epsilon(1e-9));
  CHECK(iv->t_end * std::sqrt(2.0) == doctest::Approx(half + 0.25).epsilon(1e-9));
  // tangent line touches without interior length
  CHECK(periodic_inside_length(kDisk, {0.0, 0.75}, {1.0, 0.75}) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("property: periodicity of membership") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Point2 x{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
    const Point2 k{std::floor(rng.uniform(-10.0, 11.0)), std::floor(rng.uniform(-10.0, 11.0))};
    CHECK(kDisk.periodic_contains(x) == kDisk.periodic_contains(x + k));
    CHECK(kSquare.periodic_contains(x) == kSquare.periodic_contains(x + k));
  }
}

TEST_CASE("property: signed distance is 1-Lipschitz") {
  Rng rng(12);
  for (const InclusionShape& shape : {kDisk, kSquare}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Point2 x{rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)};
      const Point2 y{rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)};
      CHECK(std::abs(shape.signed_distance(x) - shape.signed_distance(y)) <= distance(x, y) + 1e-12);
    }
  }
}

TEST_CASE("property: boundary geodesic is a metric dominating the chord") {
  Rng rng(13);
  for (const InclusionShape& shape : {kDisk, kSquare}) {
    const double per = shape.perimeter();
    for (int trial = 0; trial < 300; ++trial) {
      const Point2 a = shape.boundary_at(rng.uniform(0.0, per));
      const Point2 b = shape.boundary_at(rng.uniform(0.0, per));
      const Point2 c = shape.boundary_at(rng.uniform(0.0, per));
      const double ab = shape.boundary_geodesic_length(a, b);
      CHECK(ab == doctest::Approx(shape.boundary_geodesic_length(b, a)).epsilon(1e-12));
      CHECK(ab <= shape.boundary_geodesic_length(a, c) + shape.boundary_geodesic_length(c, b) + 1e-12);
      CHECK(ab >= distance(a, b) - 1e-12);
    }
  }
}

TEST_CASE("boundary walks stay in the closed matrix") {
  const Point2 a = kDisk.boundary_at(0.1);
  const Point2 b = kDisk.boundary_at(1.2);
  const auto walk = kDisk.boundary_walk(a, b, 64);
  REQUIRE(walk.size() >= 2);
  CHECK(near(walk.front(), a));
  CHECK(near(walk.back(), b));
  double length = 0.0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    length += distance(walk[i - 1], walk[i]);
    CHECK(kDisk.inside_interval(walk[i - 1], walk[i]) == std::nullopt);
  }
  const double exact = kDisk.boundary_geodesic_length(a, b);
  CHECK(length >= exact);
  CHECK(length <= exact * (1 + 1e-3));

  const auto square_walk = kSquare.boundary_walk({0.7, 0.5}, {0.3, 0.5}, 64);
  double square_length = 0.0;
  for (std::size_t i = 1; i < square_walk.size(); ++i) square_length += distance(square_walk[i - 1], square_walk[i]);
  CHECK(square_length == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("periodic signed distance sees neighbouring translates") {
  CHECK(periodic_signed_distance(kDisk, {0.0, 0.0}) == doctest::Approx(std::sqrt(0.5) - 0.25).epsilon(1e-12));
  CHECK(periodic_signed_distance(kDisk, {3.5, -1.5}) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(periodic_signed_distance(kDisk, {1.0, 0.5}) == doctest::Approx(0.25).epsilon(1e-12));
}
