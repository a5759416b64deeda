#pragma once

#include <span>
#include <string>
#include <vector>

#include "hocomp/geometry.hpp"
#include "hocomp/grid_solver.hpp"

namespace hocomp {

/// psi(xi) estimated as d_1(0, R xi) / R under the single-scale coefficient.
struct PsiEstimate {
  Point2 direction;
  double value = 0.0;
  std::vector<double> window_sizes;
  std::vector<double> sequence;  // psi_R per window size
  /// Largest relative step |psi_R_i - psi_R_{i-1}| / psi over the tail (the
  /// second half of the sequence).
  double cauchy_tail = 0.0;
  bool converged = false;
};

struct NormTable {
  double beta = 1.0;
  std::vector<double> angles;
  std::vector<PsiEstimate> estimates;
};

struct NormReport {
  double homogeneity_residual = 0.0;  // max relative |psi_R - psi_2R| over converged directions
  double triangle_excess = 0.0;       // max relative violation, <= 0 when it holds
  std::size_t triangle_checks = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  bool homogeneity_ok = false;
  bool triangle_ok = false;
  bool bounds_ok = false;
  bool passed = false;
};

inline constexpr double kConvergenceThreshold = 0.01;

PsiEstimate estimate_psi(const InclusionShape& shape, double beta, Point2 unit_direction,
                         std::span<const double> window_sizes, const SolverOptions& options = {});

NormTable psi_table(const InclusionShape& shape, double beta, std::size_t n_directions,
                    std::span<const double> window_sizes, const SolverOptions& options = {});

/// Homogeneity from psi_R vs psi_2R pairs, the triangle inequality of the
/// 1-homogeneous extension on direction pairs whose sum direction is sampled,
/// and 1 <= psi <= beta; each at relative tolerance tol.
NormReport check_norm_properties(const NormTable& table, double tol = 0.02);

/// psi(v) for an arbitrary vector: |v| times the estimate along v/|v|.
double psi_of(const InclusionShape& shape, double beta, Point2 v, std::span<const double> window_sizes,
              const SolverOptions& options = {});

}  // namespace hocomp
