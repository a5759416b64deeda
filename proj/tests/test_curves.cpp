#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hocomp/curves.hpp"
#include "hocomp/error.hpp"
#include "hocomp/grid_solver.hpp"
#include "hocomp/parallel.hpp"
#include "oracles.hpp"

using namespace hocomp;

namespace {

const InclusionShape kDisk = InclusionShape::disk({0.5, 0.5}, 0.25);
const MetricParams kP1{2.0, Exponent::finite(1.0), 1.0};
const MetricParams kWall{2.0, Exponent::infinite(), 1.0};

// Diagonal through the unit cell: the chord is replaced by the shorter arc
// between the two crossing points.
double pushed_diagonal_length() {
  const double half = std::sqrt(2.0) / 2;
  return 2 * (half - 0.25) + 0.25 * std::numbers::pi;
}

double tangent_arc() { return oracle::tangent_arc_tangent({0.5, 0.5}, 0.25, {0, 0}, {1, 1}); }

}  // namespace

TEST_CASE("oracle values") {
  CHECK(tangent_arc() == doctest::Approx(1.503559).epsilon(1e-6));
  CHECK(pushed_diagonal_length() == doctest::Approx(1.6996).epsilon(1e-4));
}

TEST_CASE("path construction") {
  const Path p({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 1}});
  CHECK(p.size() == 3);
  CHECK(p.euclidean_length() == doctest::Approx(2.0));
  CHECK(Path({{0.3, 0.3}}).size() == 1);
  CHECK(Path({{0.3, 0.3}, {0.3, 0.3}}).size() == 1);
  CHECK_THROWS_AS(Path({}), Error);
  CHECK(p.at_arclength(1.5).x == doctest::Approx(1.0));
  CHECK(p.at_arclength(1.5).y == doctest::Approx(0.5));
}

TEST_CASE("length functional") {
  CHECK(length_functional(kDisk, kP1, Path::segment({0, 0}, {1, 0})) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(length_functional(kDisk, kP1, Path::segment({0, 0}, {1, 1})) ==
        doctest::Approx(std::sqrt(2.0) - 0.5 + 2 * 0.5).epsilon(1e-12));
  CHECK(std::isinf(length_functional(kDisk, kWall, Path::segment({0, 0}, {1, 1}))));
  // folded coordinates: eps = 1/2 puts two inclusion rows under the diagonal
  const MetricParams half{2.0, Exponent::finite(1.0), 0.5};
  const double chord = 2 * 0.5 * (2 * 0.25);  // two chords of length eps * 2r
  CHECK(length_functional(kDisk, half, Path::segment({0, 0}, {1, 1})) ==
        doctest::Approx(std::sqrt(2.0) - chord + (2.0 / 0.5) * chord).epsilon(1e-9));
}

TEST_CASE("snap to matrix") {
  const Point2 same = snap_to_matrix(kDisk, 0.3, {0, 0});
  CHECK(same == Point2{0, 0});
  const Point2 s = snap_to_matrix(kDisk, 1.0 / 3, {0.5, 0.5});
  CHECK(s.x == doctest::Approx(0.5 + 0.25 / 3).epsilon(1e-8));
  CHECK(s.y == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(distance(s, {0.5, 0.5}) <= std::sqrt(2.0) / 3);
  CHECK(snap_to_matrix(kDisk, 0.5, {0.5, 0.5}) == Point2{0.5, 0.5});
}

TEST_CASE("property: snap is idempotent and lands in the matrix") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const double eps = rng.uniform(0.05, 1.0);
    const Point2 x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const Point2 s = snap_to_matrix(kDisk, eps, x);
    CHECK_FALSE(kDisk.periodic_contains(s / eps));
    CHECK(snap_to_matrix(kDisk, eps, s) == s);
    CHECK(distance(s, x) <= std::sqrt(2.0) * eps);
  }
}

TEST_CASE("push to walls") {
  const Path straight = Path::segment({0, 0}, {1, 0});
  const Path kept = push_to_walls(kDisk, 1.0, straight);
  CHECK(kept.size() == 2);

  const Path one = push_to_walls(kDisk, 1.0, Path::segment({0, 0}, {1, 1}));
  CHECK(one.euclidean_length() == doctest::Approx(pushed_diagonal_length()).epsilon(2e-3));
  CHECK(length_functional(kDisk, kWall, one) == doctest::Approx(one.euclidean_length()).epsilon(1e-9));

  const Path two = push_to_walls(kDisk, 1.0, Path::segment({0, 0}, {2, 2}));
  CHECK(two.euclidean_length() == doctest::Approx(2 * pushed_diagonal_length()).epsilon(2e-3));
  CHECK(std::isfinite(length_functional(kDisk, kWall, two)));

  CHECK_THROWS_AS(push_to_walls(kDisk, 1.0, Path::segment({0.5, 0.5}, {2, 2})), Error);
}

TEST_CASE("property: collinear vertices leave the functional unchanged") {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const Point2 a{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
    const Point2 b{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
    std::vector<Point2> many{a};
    for (int k = 1; k <= 7; ++k) many.push_back(a + (b - a) * (k / 8.0));
    many.push_back(b);
    const double one = length_functional(kDisk, kP1, Path::segment(a, b));
    CHECK(length_functional(kDisk, kP1, Path(many)) == doctest::Approx(one).epsilon(1e-12));
    CHECK(one >= distance(a, b) - 1e-12);
  }
}

TEST_CASE("piecewise geodesic refinement") {
  SolverOptions opts;
  opts.nodes_per_cell = 32;
  const Path straight = piecewise_geodesic_refine(kDisk, kWall, Path::segment({0, 0}, {1, 0}), 1, opts);
  CHECK(length_functional(kDisk, kWall, straight) == doctest::Approx(1.0).epsilon(0.02));

  const Path pushed = push_to_walls(kDisk, 1.0, Path::segment({0, 0}, {1, 1}));
  const Path refined = piecewise_geodesic_refine(kDisk, kWall, pushed, 1, opts);
  const double value = length_functional(kDisk, kWall, refined);
  CHECK(value == doctest::Approx(tangent_arc()).epsilon(0.01));
  CHECK(value < length_functional(kDisk, kWall, pushed));

  const Path crossing = piecewise_geodesic_refine(kDisk, kWall, Path::segment({0, 0}, {1, 1}), 1, opts);
  CHECK(length_functional(kDisk, kWall, crossing) == doctest::Approx(tangent_arc()).epsilon(0.01));
}

TEST_CASE("path csv") {
  std::ostringstream os;
  write_path_csv(Path::segment({0, 0}, {0.5, 1}), os);
  CHECK(os.str() == "x,y\n0,0\n0.5,1\n");
}
