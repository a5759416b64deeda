#pragma once

#include <cstdint>
#include <vector>

#include "hocomp/geometry.hpp"
#include "hocomp/grid_solver.hpp"

namespace hocomp {

/// Supremum over boundary pairs of boundary-walk length / chord length. For a
/// convex inclusion the straight chord is the cheapest interior path, so any
/// beta above this value makes the boundary walk strictly cheaper.
struct OpacityEstimate {
  double lambda_hat = 1.0;
  Point2 worst_a;
  Point2 worst_b;
  std::size_t n_samples = 0;
};

OpacityEstimate estimate_lambda(const InclusionShape& shape, std::size_t n_samples = 256);

struct AvoidanceTrial {
  Point2 from;
  Point2 to;
  double distance = 0.0;
  /// Deepest point of the geodesic inside an inclusion (0 if it stays out).
  double incursion_depth = 0.0;
  bool violation = false;
};

struct AvoidanceReport {
  double beta = 0.0;
  double lambda_hat = 0.0;
  bool precondition_met = false;
  double grid_spacing = 0.0;
  std::vector<AvoidanceTrial> trials;
  std::size_t violations = 0;
};

/// Single-scale geodesics between random matrix points of the 3x3 cell
/// window [0,3]^2; a trial violates avoidance when its incursion exceeds one
/// grid spacing. Reported even when beta <= lambda_hat.
AvoidanceReport verify_avoidance(const InclusionShape& shape, double beta, std::size_t n_trials,
                                 std::uint64_t seed, const SolverOptions& options = {});

/// Max depth of the polyline inside Omega_g + Z^2.
double incursion_depth(const InclusionShape& shape, const Path& path);

}  // namespace hocomp
