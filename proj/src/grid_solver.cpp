#include "hocomp/grid_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "hocomp/detail/golden.hpp"
#include "hocomp/error.hpp"

namespace hocomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::vector<std::array<int, 2>> stencil_offsets(Stencil stencil) {
  std::vector<std::array<int, 2>> out = {{1, 0}, {0, 1}, {-1, 0}, {0, -1},
                                         {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  if (stencil == Stencil::n16) {
    const std::array<std::array<int, 2>, 8> knight = {
        {{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}}};
    out.insert(out.end(), knight.begin(), knight.end());
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void check_endpoint(const GridField& field, Point2 p) {
  require(std::isfinite(p.x) && std::isfinite(p.y), "endpoint must be finite");
  require(field.spec().covers(p), "endpoint lies outside the grid window");
  if (field.medium().is_obstacle() && field.medium().shape.periodic_contains(p))
    fail(ErrorCode::endpoint_in_obstacle, "disconnected: endpoint lies inside an obstacle");
}

}  // namespace

GridSpec GridSpec::window(Point2 lower, Point2 upper, int nodes_per_cell, Stencil stencil) {
  require(nodes_per_cell >= 2, "nodes_per_cell must be at least 2");
  require(lower.x <= upper.x && lower.y <= upper.y, "window corners out of order");
  GridSpec spec;
  spec.nodes_per_cell = nodes_per_cell;
  spec.stencil = stencil;
  const double n = nodes_per_cell;
  spec.first_i = static_cast<long>(std::floor(lower.x * n));
  spec.first_j = static_cast<long>(std::floor(lower.y * n));
  const long last_i = static_cast<long>(std::ceil(upper.x * n));
  const long last_j = static_cast<long>(std::ceil(upper.y * n));
  spec.nx = std::max(last_i - spec.first_i + 1, 2L);
  spec.ny = std::max(last_j - spec.first_j + 1, 2L);
  return spec;
}

GridSpec GridSpec::around(Point2 a, Point2 b, const SolverOptions& options) {
  require(options.padding_cells >= 0.0, "padding_cells must be non-negative");
  require(options.nodes_per_cell >= 16, "nodes_per_cell must be at least 16");
  const double pad = options.padding_cells;
  const Point2 lo{std::min(a.x, b.x) - pad, std::min(a.y, b.y) - pad};
  const Point2 hi{std::max(a.x, b.x) + pad, std::max(a.y, b.y) + pad};
  if (hi.x - lo.x > double(options.max_cells_per_side) || hi.y - lo.y > double(options.max_cells_per_side))
    fail(ErrorCode::resource_limit, "grid window exceeds the maximum number of cells per side");
  GridSpec spec = window(lo, hi, options.nodes_per_cell, options.stencil);
  if (spec.node_count() > options.max_nodes)
    fail(ErrorCode::resource_limit, "grid window exceeds the maximum node count");
  return spec;
}

bool GridSpec::covers(Point2 p) const {
  const Point2 lo = lower();
  const Point2 hi = upper();
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
}

void GridSpec::validate() const {
  require(nodes_per_cell >= 2, "nodes_per_cell must be at least 2");
  require(nx >= 2 && ny >= 2, "grid needs at least 2x2 nodes");
  require(node_count() < std::size_t(kNone) - 2, "grid too large for 32-bit node indices");
}

GridField::GridField(Medium medium, GridSpec spec)
    : medium_(std::move(medium)), spec_(spec), offsets_(stencil_offsets(spec.stencil)) {
  spec_.validate();
  const int n = spec_.nodes_per_cell;
  const double h = spec_.spacing();
  cell_weight_.resize(std::size_t(n) * n);
  edge_cost_.resize(cell_weight_.size() * offsets_.size());
  for (int lj = 0; lj < n; ++lj) {
    for (int li = 0; li < n; ++li) {
      const std::size_t cell = std::size_t(lj) * n + li;
      const Point2 p{li * h, lj * h};
      cell_weight_[cell] = medium_.at(p);
      for (std::size_t k = 0; k < offsets_.size(); ++k) {
        double cost = kInf;
        if (!std::isinf(cell_weight_[cell])) {
          const Point2 q{(li + offsets_[k][0]) * h, (lj + offsets_[k][1]) * h};
          cost = std::isinf(medium_.at(q)) ? kInf : medium_.segment_cost(p, q);
        }
        edge_cost_[cell * offsets_.size() + k] = cost;
      }
    }
  }
}

std::size_t GridField::obstacle_count() const {
  std::size_t count = 0;
  for (long j = 0; j < spec_.ny; ++j)
    for (long i = 0; i < spec_.nx; ++i) count += is_obstacle(i, j) ? 1 : 0;
  return count;
}

std::vector<Stub> GridField::stubs(Point2 p) const {
  const double n = spec_.nodes_per_cell;
  const long ci = std::clamp(static_cast<long>(std::floor(p.x * n)) - spec_.first_i, 0L, spec_.nx - 2);
  const long cj = std::clamp(static_cast<long>(std::floor(p.y * n)) - spec_.first_j, 0L, spec_.ny - 2);
  std::vector<Stub> out;
  for (long dj = 0; dj <= 1; ++dj) {
    for (long di = 0; di <= 1; ++di) {
      if (is_obstacle(ci + di, cj + dj)) continue;
      const std::uint32_t node = index(ci + di, cj + dj);
      const double cost = medium_.segment_cost(p, position(node));
      if (std::isfinite(cost)) out.push_back({node, cost});
    }
  }
  return out;
}

GridField build_field(const InclusionShape& shape, const MetricParams& params, const GridSpec& spec) {
  require(spec.nodes_per_cell >= 16, "nodes_per_cell must be at least 16");
  return GridField(unfolded_medium(shape, params), spec);
}

DistanceResult graph_shortest_path(const GridField& field, Point2 s, Point2 t, bool use_heuristic) {
  const auto start = std::chrono::steady_clock::now();
  check_endpoint(field, s);
  check_endpoint(field, t);

  const std::size_t n_nodes = field.node_count();
  const auto src = static_cast<std::uint32_t>(n_nodes);
  const auto tgt = static_cast<std::uint32_t>(n_nodes + 1);
  std::vector<double> g(n_nodes + 2, kInf);
  std::vector<std::uint32_t> parent(n_nodes + 2, kNone);
  std::vector<std::uint8_t> closed(n_nodes, 0);

  auto heuristic = [&](std::uint32_t node) {
    if (!use_heuristic || node >= n_nodes) return 0.0;
    return distance(field.position(node), t) * (1.0 - 1e-12);
  };

  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const double direct = field.medium().segment_cost(s, t);
  if (std::isfinite(direct)) {
    g[tgt] = direct;
    parent[tgt] = src;
    open.emplace(direct, tgt);
  }
  for (const Stub& stub : field.stubs(s)) {
    if (stub.cost < g[stub.node]) {
      g[stub.node] = stub.cost;
      parent[stub.node] = src;
      open.emplace(stub.cost + heuristic(stub.node), stub.node);
    }
  }
  const std::vector<Stub> target_stubs = field.stubs(t);

  std::size_t expanded = 0;
  while (!open.empty()) {
    const auto [f, u] = open.top();
    open.pop();
    if (u == tgt) break;
    if (closed[u]) continue;
    closed[u] = 1;
    ++expanded;
    const double gu = g[u];
    field.for_each_edge(u, [&](std::uint32_t v, double cost) {
      if (closed[v]) return;
      const double nd = gu + cost;
      if (nd < g[v]) {
        g[v] = nd;
        parent[v] = u;
        open.emplace(nd + heuristic(v), v);
      }
    });
    for (const Stub& stub : target_stubs) {
      if (stub.node != u) continue;
      const double nd = gu + stub.cost;
      if (nd < g[tgt]) {
        g[tgt] = nd;
        parent[tgt] = u;
        open.emplace(nd, tgt);
      }
    }
  }
  if (!std::isfinite(g[tgt])) fail(ErrorCode::disconnected, "disconnected: target is unreachable");

  std::vector<Point2> vertices{t};
  for (std::uint32_t v = parent[tgt]; v != src; v = parent[v]) vertices.push_back(field.position(v));
  vertices.push_back(s);
  std::reverse(vertices.begin(), vertices.end());

  DistanceResult result{g[tgt], Path(std::move(vertices)), {}};
  result.stats.nodes_expanded = expanded;
  result.stats.graph_value = g[tgt];
  result.stats.runtime_ms = elapsed_ms(start);
  return result;
}

DistanceResult shortest_path(const GridField& field, Point2 s, Point2 t, const SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  DistanceResult result = graph_shortest_path(field, s, t, options.use_heuristic);
  result.path = local_shorten(field.medium(), result.path, options.shorten_rounds);
  result.value = length_functional(field.medium(), result.path);
  result.stats.runtime_ms = elapsed_ms(start);
  return result;
}

DistanceResult distance_unfolded(const Medium& medium, Point2 s, Point2 t, const SolverOptions& options) {
  if (s == t) {
    if (medium.is_obstacle() && medium.shape.periodic_contains(s))
      fail(ErrorCode::endpoint_in_obstacle, "disconnected: endpoint lies inside an obstacle");
    return {0.0, Path({s}), {}};
  }
  GridField field(medium, GridSpec::around(s, t, options));
  return shortest_path(field, s, t, options);
}

DistanceResult distance_folded(const InclusionShape& shape, const MetricParams& params, Point2 xi1,
                               Point2 xi2, const SolverOptions& options) {
  params.validate();
  const double eps = params.epsilon;
  DistanceResult r = distance_unfolded(unfolded_medium(shape, params), xi1 / eps, xi2 / eps, options);
  r.value *= eps;
  r.stats.graph_value *= eps;
  std::vector<Point2> folded(r.path.vertices().begin(), r.path.vertices().end());
  for (Point2& v : folded) v = v * eps;
  folded.front() = xi1;
  folded.back() = xi2;
  r.path = Path(std::move(folded));
  return r;
}

namespace {

bool removal_pass(const Medium& medium, std::vector<Point2>& v) {
  if (v.size() < 3) return false;
  std::vector<Point2> out{v.front()};
  bool changed = false;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point2 a = out.back();
    const Point2 b = v[i];
    const Point2 c = v[i + 1];
    const double shortcut = medium.segment_cost(a, c);
    if (std::isfinite(shortcut) && shortcut <= medium.segment_cost(a, b) + medium.segment_cost(b, c)) {
      changed = true;
      continue;
    }
    out.push_back(b);
  }
  out.push_back(v.back());
  v = std::move(out);
  return changed;
}

bool relax_pass(const Medium& medium, std::vector<Point2>& v) {
  bool changed = false;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point2 a = v[i - 1];
    const Point2 c = v[i + 1];
    auto cost_at = [&](Point2 q) { return medium.segment_cost(a, q) + medium.segment_cost(q, c); };
    const double f0 = cost_at(v[i]);
    if (!std::isfinite(f0)) continue;

    // Pull toward the chord a-c, then slide along it.
    const Point2 b = v[i];
    const Point2 ac = c - a;
    const double len2 = dot(ac, ac);
    if (len2 == 0.0) continue;
    const Point2 foot = a + ac * std::clamp(dot(b - a, ac) / len2, 0.0, 1.0);
    Point2 best = b;
    double best_f = f0;
    if (distance(foot, b) > 1e-14) {
      const Point2 dir = foot - b;
      auto [t, ft] = detail::golden_min([&](double s) { return cost_at(b + dir * s); }, 0.0, 1.0, 48);
      if (ft < best_f) best_f = ft, best = b + dir * t;
    }
    const double reach = 0.5 * std::min(distance(a, best), distance(best, c));
    if (reach > 1e-14) {
      const Point2 along = ac * (reach / std::sqrt(len2));
      const Point2 base = best;
      auto [t, ft] = detail::golden_min([&](double s) { return cost_at(base + along * s); }, -1.0, 1.0, 48);
      if (ft < best_f) best_f = ft, best = base + along * t;
    }
    if (best_f < f0) {
      v[i] = best;
      changed = true;
    }
  }
  return changed;
}

}  // namespace

Path local_shorten(const Medium& medium, const Path& path, int rounds) {
  std::vector<Point2> v(path.vertices().begin(), path.vertices().end());
  for (int r = 0; r < rounds; ++r) {
    const bool removed = removal_pass(medium, v);
    const bool relaxed = relax_pass(medium, v);
    if (!removed && !relaxed) break;
  }
  removal_pass(medium, v);
  return Path(std::move(v));
}

Path local_shorten(const GridField& field, const Path& path, int rounds) {
  return local_shorten(field.medium(), path, rounds);
}

}  // namespace hocomp
