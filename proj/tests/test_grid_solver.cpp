#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "hocomp/error.hpp"
#include "hocomp/grid_solver.hpp"
#include "hocomp/parallel.hpp"
#include "oracles.hpp"

using namespace hocomp;

namespace {

const InclusionShape kDisk = InclusionShape::disk({0.5, 0.5}, 0.25);
const InclusionShape kSquare = InclusionShape::square({0.5, 0.5}, 0.2);
const MetricParams kWall{2.0, Exponent::infinite(), 1.0};
const MetricParams kSoft{2.0, Exponent::finite(0.5), 1.0};

double tangent_arc() { return oracle::tangent_arc_tangent({0.5, 0.5}, 0.25, {0, 0}, {1, 1}); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

// Graph value from the virtual source to the virtual target by Bellman-Ford
// over the same stencil graph, stubs and direct edge.
double bellman_ford_value(const GridField& field, Point2 s, Point2 t) {
  const std::vector<double> d = oracle::bellman_ford(field, field.stubs(s));
  double best = field.medium().segment_cost(s, t);
  for (const Stub& stub : field.stubs(t)) best = std::min(best, d[stub.node] + stub.cost);
  return best;
}

}  // namespace

TEST_CASE("field weights and obstacle mask") {
  const GridSpec spec = GridSpec::window({0, 0}, {1, 1}, 32, Stencil::n16);
  CHECK(spec.nx == 33);
  CHECK(spec.ny == 33);
  const GridField field = build_field(kDisk, kWall, spec);
  // direct enumeration of lattice points strictly inside the disk
  std::size_t expected = 0;
  for (int j = 0; j <= 32; ++j)
    for (int i = 0; i <= 32; ++i) expected += std::hypot(i / 32.0 - 0.5, j / 32.0 - 0.5) < 0.25 ? 1 : 0;
  CHECK(field.obstacle_count() == expected);
  CHECK(std::abs(double(field.obstacle_count()) - std::numbers::pi * 64) <= 2 * std::numbers::pi * 8 + 4);

  const GridField empty = build_field(kDisk, kWall, GridSpec::window({0, 0}, {0.2, 0.2}, 32, Stencil::n16));
  CHECK(empty.obstacle_count() == 0);
  for (long j = 0; j < empty.spec().ny; ++j)
    for (long i = 0; i < empty.spec().nx; ++i) CHECK(empty.node_weight(i, j) == 1.0);

  const GridField soft = build_field(kDisk, {2.0, Exponent::finite(0.5), 0.04}, spec);
  CHECK(soft.node_weight(16, 16) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(soft.node_weight(0, 0) == 1.0);
}

TEST_CASE("straight and detour distances") {
  const DistanceResult straight = distance_folded(kDisk, kWall, {0, 0}, {1, 0});
  CHECK(straight.value == doctest::Approx(1.0).epsilon(0.005));

  const auto t0 = std::chrono::steady_clock::now();
  const DistanceResult detour = distance_folded(kDisk, kWall, {0, 0}, {1, 1});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(detour.value == doctest::Approx(tangent_arc()).epsilon(0.01));
  CHECK(secs < 2.0);

  const DistanceResult soft = distance_folded(kDisk, kSoft, {0, 0}, {1, 1});
  CHECK(soft.value == doctest::Approx(tangent_arc()).epsilon(0.01));
  CHECK(soft.value < std::sqrt(2.0) + 0.5);
}

TEST_CASE("folded distances") {
  const DistanceResult row = distance_folded(kDisk, {2.0, Exponent::finite(0.5), 0.2}, {0, 0}, {1, 0});
  CHECK(row.value == doctest::Approx(1.0).epsilon(0.005));
  const DistanceResult same = distance_folded(kDisk, kSoft, {0.3, 0.1}, {0.3, 0.1});
  CHECK(same.value == 0.0);
  CHECK(same.path.size() == 1);
}

TEST_CASE("error reporting") {
  CHECK(code_of([] { distance_folded(kDisk, kWall, {0, 0}, {0.5, 0.5}); }) == ErrorCode::endpoint_in_obstacle);
  CHECK(code_of([] { distance_folded(kDisk, kWall, {0.5, 0.5}, {0.5, 0.5}); }) == ErrorCode::endpoint_in_obstacle);
  SolverOptions tiny;
  tiny.max_nodes = 1000;
  CHECK(code_of([&] { distance_folded(kDisk, kSoft, {0, 0}, {5, 5}, tiny); }) == ErrorCode::resource_limit);
  const GridField field = build_field(kDisk, kSoft, GridSpec::window({0, 0}, {1, 1}, 16, Stencil::n16));
  CHECK(code_of([&] { graph_shortest_path(field, {0, 0}, {3, 3}, false); }) == ErrorCode::invalid_argument);
  // a thin window through the obstacle splits the matrix into two parts
  const GridField band = build_field(kDisk, kWall, GridSpec::window({0, 0.4}, {1, 0.6}, 16, Stencil::n16));
  CHECK(code_of([&] { graph_shortest_path(band, {0.1, 0.5}, {0.9, 0.5}, false); }) == ErrorCode::disconnected);
}

TEST_CASE("oracle equivalence with Bellman-Ford on small grids") {
  Rng rng(41);
  const std::vector<std::pair<InclusionShape, MetricParams>> media = {
      {kDisk, kWall}, {kDisk, kSoft}, {kSquare, {3.0, Exponent::finite(1.0), 1.0}}, {kSquare, kWall}};
  int compared = 0;
  for (const auto& [shape, params] : media) {
    for (Stencil st : {Stencil::n8, Stencil::n16}) {
      const GridSpec spec = GridSpec::window({0, 0}, {19.0 / 16, 19.0 / 16}, 16, st);
      REQUIRE(spec.nx == 20);
      REQUIRE(spec.ny == 20);
      const GridField field = build_field(shape, params, spec);
      for (int trial = 0; trial < 6; ++trial) {
        Point2 s, t;
        do {
          s = {rng.uniform(0.0, 19.0 / 16), rng.uniform(0.0, 19.0 / 16)};
          t = {rng.uniform(0.0, 19.0 / 16), rng.uniform(0.0, 19.0 / 16)};
        } while (shape.periodic_contains(s) || shape.periodic_contains(t));
        if (trial == 0) s = field.position(field.index(0, 0)), t = field.position(field.index(19, 19));
        double graph = 0.0;
        try {
          graph = graph_shortest_path(field, s, t, false).value;
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::disconnected);
          CHECK(std::isinf(bellman_ford_value(field, s, t)));
          continue;
        }
        CHECK(graph == bellman_ford_value(field, s, t));
        const double astar = graph_shortest_path(field, s, t, true).value;
        CHECK(astar == doctest::Approx(graph).epsilon(1e-12));
        ++compared;
      }
    }
  }
  CHECK(compared > 30);
}

TEST_CASE("reported value equals the functional of the reported path") {
  Rng rng(42);
  SolverOptions opts;
  opts.nodes_per_cell = 32;
  for (int trial = 0; trial < 20; ++trial) {
    const Point2 s{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    const Point2 t{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    const MetricParams params{2.0, Exponent::finite(1.0), 1.0};
    const DistanceResult r = distance_folded(kDisk, params, s, t, opts);
    CHECK(length_functional(kDisk, params, r.path) == doctest::Approx(r.value).epsilon(1e-9));
    CHECK(r.value <= r.stats.graph_value * (1 + 1e-12));
    CHECK(r.path.front() == s);
    CHECK(r.path.back() == t);
  }
}

TEST_CASE("local shortening") {
  const Medium flat = single_scale_medium(kDisk, 1.0);
  std::vector<Point2> stair{{0, 0}};
  for (int k = 1; k <= 8; ++k) {
    stair.push_back({k / 8.0, (k - 1) / 8.0});
    stair.push_back({k / 8.0, k / 8.0});
  }
  const Path shortened = local_shorten(flat, Path(stair), 12);
  CHECK(length_functional(flat, shortened) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  const Path again = local_shorten(flat, shortened, 12);
  CHECK(length_functional(flat, again) == doctest::Approx(length_functional(flat, shortened)).epsilon(1e-12));

  const Medium wall = unfolded_medium(kDisk, kWall);
  SolverOptions n8;
  n8.stencil = Stencil::n8;
  const GridField field(wall, GridSpec::around({0, 0}, {1, 1}, n8));
  const DistanceResult graph = graph_shortest_path(field, {0, 0}, {1, 1}, false);
  const Path better = local_shorten(field, graph.path, 12);
  const double value = length_functional(wall, better);
  CHECK(value < graph.value);
  CHECK(value >= tangent_arc() * (1 - 1e-6));
  CHECK(value == doctest::Approx(tangent_arc()).epsilon(0.01));
}

TEST_CASE("property: growth bounds, symmetry and triangle inequality") {
  Rng rng(43);
  SolverOptions opts;
  opts.nodes_per_cell = 32;
  const MetricParams params{2.0, Exponent::finite(0.5), 0.25};
  const double tol = 0.02;
  std::vector<Point2> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dij = distance_folded(kDisk, params, pts[i], pts[j], opts).value;
      const double dji = distance_folded(kDisk, params, pts[j], pts[i], opts).value;
      const double e = distance(pts[i], pts[j]);
      CHECK(dij >= e * (1 - tol));
      CHECK(dij <= params.inclusion_weight() * e * (1 + tol));
      CHECK(dij == doctest::Approx(dji).epsilon(tol));
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k == i || k == j) continue;
        const double dik = distance_folded(kDisk, params, pts[i], pts[k], opts).value;
        const double dkj = distance_folded(kDisk, params, pts[k], pts[j], opts).value;
        CHECK(dij <= (dik + dkj) * (1 + tol));
      }
    }
  }
}

TEST_CASE("property: distance is monotone in contrast") {
  SolverOptions opts;
  opts.nodes_per_cell = 32;
  double prev = 0.0;
  for (double beta : {1.0, 1.2, 1.5, 2.0, 4.0}) {
    const double d = distance_folded(kDisk, {beta, Exponent::finite(1.0), 1.0}, {0, 0}, {1, 1}, opts).value;
    CHECK(d >= prev * (1 - 0.02));
    prev = d;
  }
  CHECK(prev <= distance_folded(kDisk, kWall, {0, 0}, {1, 1}, opts).value * (1 + 0.02));
}
