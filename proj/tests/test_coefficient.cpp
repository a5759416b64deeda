#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hocomp/coefficient.hpp"
#include "hocomp/error.hpp"
#include "hocomp/parallel.hpp"

using namespace hocomp;

namespace {
const InclusionShape kDisk = InclusionShape::disk({0.5, 0.5}, 0.25);
}

TEST_CASE("single-scale coefficient") {
  CHECK(eval_single_scale(kDisk, 2.0, {0.5, 0.5}) == 2.0);
  CHECK(eval_single_scale(kDisk, 2.0, {0.0, 0.0}) == 1.0);
  CHECK(eval_single_scale(kDisk, 2.0, {0.75, 0.5}) == 1.0);
}

TEST_CASE("contrast coefficient") {
  CHECK(eval_contrast(kDisk, {2.0, Exponent::finite(0.5), 0.04}, {0.5, 0.5}) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(eval_contrast(kDisk, {2.0, Exponent::finite(1.0), 0.1}, {0.5, 0.5}) == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(eval_contrast(kDisk, {2.0, Exponent::infinite(), 0.1}, {0.0, 0.0}) == 1.0);
  CHECK(std::isinf(eval_contrast(kDisk, {2.0, Exponent::infinite(), 0.1}, {0.5, 0.5})));
}

TEST_CASE("admissibility gate") {
  const double lambda = std::numbers::pi / 2;
  CHECK(check_admissible({2.0, Exponent::finite(0.5), 0.25}, lambda).admissible);
  const Admissibility low = check_admissible({1.0, Exponent::finite(0.5), 0.1}, lambda);
  CHECK_FALSE(low.admissible);
  CHECK(low.diagnostic == "beta <= lambda");
  CHECK(check_admissible({2.0, Exponent::infinite(), 0.1}, lambda).admissible);
  // beta above lambda but epsilon^p too large
  const Admissibility coarse = check_admissible({2.0, Exponent::finite(2.0), 1.2}, lambda);
  CHECK_FALSE(coarse.admissible);
  CHECK(coarse.diagnostic == "epsilon^p >= beta/lambda");
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Exponent::finite(0.0), Error);
  CHECK_THROWS_AS(Exponent::finite(-1.0), Error);
  CHECK_THROWS_AS((MetricParams{0.0, Exponent::finite(1.0), 1.0}.validate()), Error);
  CHECK_THROWS_AS((MetricParams{2.0, Exponent::finite(1.0), 0.0}.validate()), Error);
  CHECK(Exponent::infinite().to_string() == "inf");
  CHECK(Exponent::finite(0.5).to_string() == "0.5");
}

TEST_CASE("property: contrast dominates single scale and agrees on the matrix") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Point2 x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double eps = rng.uniform(0.01, 1.0);
    const MetricParams params{2.0, Exponent::finite(rng.uniform(0.1, 3.0)), eps};
    const double a = eval_single_scale(kDisk, 2.0, x);
    const double ae = eval_contrast(kDisk, params, x);
    CHECK(ae >= a);
    if (!kDisk.periodic_contains(x)) CHECK(ae == a);
    const Point2 k{std::floor(rng.uniform(-5.0, 6.0)), std::floor(rng.uniform(-5.0, 6.0))};
    CHECK(eval_contrast(kDisk, params, x + k) == ae);
  }
}

TEST_CASE("medium segment cost is the exact integral") {
  const Medium m = single_scale_medium(kDisk, 2.0);
  CHECK(m.segment_cost({0, 0}, {1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.segment_cost({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0) + 0.5).epsilon(1e-12));
  const Medium wall = unfolded_medium(kDisk, {2.0, Exponent::infinite(), 1.0});
  CHECK(std::isinf(wall.segment_cost({0, 0}, {1, 1})));
  CHECK(wall.segment_cost({0, 0.75}, {1, 0.75}) == doctest::Approx(1.0).epsilon(1e-12));
}
