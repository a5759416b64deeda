#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hocomp/coefficient.hpp"
#include "hocomp/curves.hpp"
#include "hocomp/geometry.hpp"

namespace hocomp {

enum class Stencil { n8, n16 };

struct SolverOptions {
  int nodes_per_cell = 64;
  Stencil stencil = Stencil::n16;
  double padding_cells = 1.0;
  int shorten_rounds = 12;
  /// Euclidean A* lower bound; the coefficient is >= 1 so it is consistent.
  bool use_heuristic = true;
  long max_cells_per_side = 10000;
  std::size_t max_nodes = 60'000'000;
};

/// Node lattice over an axis-aligned window in unfolded coordinates. Node
/// (i, j) sits at ((first_i + i) / n, (first_j + j) / n), so lattice points
/// and cell centres (n even) are nodes exactly.
struct GridSpec {
  long first_i = 0;
  long first_j = 0;
  long nx = 0;
  long ny = 0;
  int nodes_per_cell = 64;
  Stencil stencil = Stencil::n16;

  static GridSpec window(Point2 lower, Point2 upper, int nodes_per_cell, Stencil stencil);
  /// Bounding box of a and b padded by options.padding_cells on each side.
  static GridSpec around(Point2 a, Point2 b, const SolverOptions& options);

  double spacing() const { return 1.0 / nodes_per_cell; }
  std::size_t node_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  Point2 node_position(long i, long j) const {
    return {double(first_i + i) / nodes_per_cell, double(first_j + j) / nodes_per_cell};
  }
  Point2 lower() const { return node_position(0, 0); }
  Point2 upper() const { return node_position(nx - 1, ny - 1); }
  bool covers(Point2 p) const;
  void validate() const;
};

struct Stub {
  std::uint32_t node;
  double cost;
};

/// Coefficient samples and exact edge costs over a GridSpec. Both are periodic
/// in the node index with period nodes_per_cell, so they are tabulated once
/// per unit cell and shared by every cell of the window.
class GridField {
 public:
  GridField(Medium medium, GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  const Medium& medium() const { return medium_; }

  std::size_t node_count() const { return spec_.node_count(); }
  std::uint32_t index(long i, long j) const { return static_cast<std::uint32_t>(j * spec_.nx + i); }
  Point2 position(std::uint32_t node) const {
    return spec_.node_position(static_cast<long>(node % spec_.nx), static_cast<long>(node / spec_.nx));
  }
  double node_weight(long i, long j) const { return cell_weight_[local(i, j)]; }
  bool is_obstacle(long i, long j) const { return std::isinf(node_weight(i, j)); }
  std::size_t obstacle_count() const;

  const std::vector<std::array<int, 2>>& offsets() const { return offsets_; }

  /// Calls f(neighbour, cost) for every finite-cost edge leaving node.
  template <class F>
  void for_each_edge(std::uint32_t node, F&& f) const {
    const long i = static_cast<long>(node % spec_.nx);
    const long j = static_cast<long>(node / spec_.nx);
    const double* costs = &edge_cost_[local(i, j) * offsets_.size()];
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      const long ni = i + offsets_[k][0];
      const long nj = j + offsets_[k][1];
      if (ni < 0 || nj < 0 || ni >= spec_.nx || nj >= spec_.ny) continue;
      if (!std::isfinite(costs[k])) continue;
      f(index(ni, nj), costs[k]);
    }
  }

  /// Exact-cost links from an off-grid point to the corners of its grid cell.
  std::vector<Stub> stubs(Point2 p) const;

 private:
  std::size_t local(long i, long j) const {
    const long n = spec_.nodes_per_cell;
    const long li = ((spec_.first_i + i) % n + n) % n;
    const long lj = ((spec_.first_j + j) % n + n) % n;
    return static_cast<std::size_t>(lj * n + li);
  }

  Medium medium_;
  GridSpec spec_;
  std::vector<std::array<int, 2>> offsets_;
  std::vector<double> cell_weight_;
  std::vector<double> edge_cost_;
};

GridField build_field(const InclusionShape& shape, const MetricParams& params, const GridSpec& spec);

struct SearchStats {
  std::size_t nodes_expanded = 0;
  double runtime_ms = 0.0;
  /// Graph distance before shortening.
  double graph_value = 0.0;
};

struct DistanceResult {
  double value = 0.0;
  Path path;
  SearchStats stats;
};

/// Graph search plus shortening; value and path are in the field's (unfolded)
/// coordinates and value equals the exact functional of the returned path.
DistanceResult shortest_path(const GridField& field, Point2 s, Point2 t, const SolverOptions& options = {});

/// Graph search only: the optimal stencil-graph distance and its node path.
DistanceResult graph_shortest_path(const GridField& field, Point2 s, Point2 t, bool use_heuristic);

/// Distance in an unfolded medium on a window sized around s and t.
DistanceResult distance_unfolded(const Medium& medium, Point2 s, Point2 t, const SolverOptions& options = {});

/// d_{p,eps}(xi1, xi2): solved at xi/eps and scaled back by eps.
DistanceResult distance_folded(const InclusionShape& shape, const MetricParams& params, Point2 xi1,
                               Point2 xi2, const SolverOptions& options = {});

/// Vertex removal and vertex relaxation under the exact functional. Never
/// increases the functional and keeps both endpoints.
Path local_shorten(const Medium& medium, const Path& path, int rounds);
Path local_shorten(const GridField& field, const Path& path, int rounds);

}  // namespace hocomp
