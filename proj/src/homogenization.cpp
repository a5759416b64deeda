#include "hocomp/homogenization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hocomp/error.hpp"
#include "hocomp/parallel.hpp"

namespace hocomp {

PsiEstimate estimate_psi(const InclusionShape& shape, double beta, Point2 unit_direction,
                         std::span<const double> window_sizes, const SolverOptions& options) {
  require(std::abs(norm(unit_direction) - 1.0) < 1e-9, "estimate_psi needs a unit direction");
  require(window_sizes.size() >= 4, "estimate_psi needs at least 4 window sizes");
  require(window_sizes.back() >= 16.0, "estimate_psi needs a largest window size of at least 16");
  for (std::size_t i = 1; i < window_sizes.size(); ++i)
    require(window_sizes[i] > window_sizes[i - 1], "window sizes must be increasing");
  require(window_sizes.front() > 0.0, "window sizes must be positive");

  PsiEstimate est;
  est.direction = unit_direction;
  est.window_sizes.assign(window_sizes.begin(), window_sizes.end());
  est.sequence.resize(window_sizes.size());
  const Medium medium = single_scale_medium(shape, beta);
  const Point2 origin = snap_to_matrix(shape, 1.0, {0.0, 0.0});
  for (std::size_t i = 0; i < window_sizes.size(); ++i) {
    const double R = window_sizes[i];
    const Point2 end = snap_to_matrix(shape, 1.0, unit_direction * R);
    est.sequence[i] = distance_unfolded(medium, origin, end, options).value / R;
  }
  est.value = est.sequence.back();
  const std::size_t tail_start = std::max<std::size_t>(1, window_sizes.size() / 2);
  for (std::size_t i = tail_start; i < est.sequence.size(); ++i)
    est.cauchy_tail = std::max(est.cauchy_tail, std::abs(est.sequence[i] - est.sequence[i - 1]) / est.value);
  est.converged = est.cauchy_tail < kConvergenceThreshold;
  return est;
}

NormTable psi_table(const InclusionShape& shape, double beta, std::size_t n_directions,
                    std::span<const double> window_sizes, const SolverOptions& options) {
  require(n_directions >= 8, "n_directions >= 8 required");
  NormTable table;
  table.beta = beta;
  table.angles.resize(n_directions);
  table.estimates.resize(n_directions);
  for (std::size_t i = 0; i < n_directions; ++i)
    table.angles[i] = 2.0 * std::numbers::pi * double(i) / double(n_directions);
  parallel_for(n_directions, [&](std::size_t i) {
    const Point2 dir{std::cos(table.angles[i]), std::sin(table.angles[i])};
    table.estimates[i] = estimate_psi(shape, beta, dir, window_sizes, options);
  });
  return table;
}

NormReport check_norm_properties(const NormTable& table, double tol) {
  NormReport rep;
  const std::size_t n = table.estimates.size();
  require(n > 0, "empty norm table");

  // Unconverged directions are still dominated by the end correction.
  for (const PsiEstimate& e : table.estimates) {
    if (!e.converged) continue;
    for (std::size_t i = 0; i < e.window_sizes.size(); ++i)
      for (std::size_t j = i + 1; j < e.window_sizes.size(); ++j)
        if (e.window_sizes[j] == 2.0 * e.window_sizes[i] && i + 1 >= e.window_sizes.size() / 2)
          rep.homogeneity_residual =
              std::max(rep.homogeneity_residual, std::abs(e.sequence[j] - e.sequence[i]) / e.sequence[j]);
  }

  // Unit vectors at angles i and j sum to a vector along the mean angle,
  // which is a sampled direction when i + j is even.
  rep.triangle_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((i + j) % 2 != 0 || 2 * (j - i) == n) continue;
      std::size_t m = (i + j) / 2;
      if (2 * (j - i) > n) {
        if (n % 2 != 0) continue;
        m = (m + n / 2) % n;
      }
      const Point2 a{std::cos(table.angles[i]), std::sin(table.angles[i])};
      const Point2 b{std::cos(table.angles[j]), std::sin(table.angles[j])};
      const double len = norm(a + b);
      const double lhs = len * table.estimates[m].value;
      const double rhs = table.estimates[i].value + table.estimates[j].value;
      rep.triangle_excess = std::max(rep.triangle_excess, (lhs - rhs) / rhs);
      ++rep.triangle_checks;
    }
  }
  if (rep.triangle_checks == 0) rep.triangle_excess = 0.0;

  rep.min_value = std::numeric_limits<double>::infinity();
  rep.max_value = 0.0;
  for (const PsiEstimate& e : table.estimates) {
    rep.min_value = std::min(rep.min_value, e.value);
    rep.max_value = std::max(rep.max_value, e.value);
  }
  rep.homogeneity_ok = rep.homogeneity_residual < tol;
  rep.triangle_ok = rep.triangle_excess <= tol;
  rep.bounds_ok = rep.min_value >= 1.0 - tol && rep.max_value <= table.beta * (1.0 + tol);
  rep.passed = rep.homogeneity_ok && rep.triangle_ok && rep.bounds_ok;
  return rep;
}

double psi_of(const InclusionShape& shape, double beta, Point2 v, std::span<const double> window_sizes,
              const SolverOptions& options) {
  const double len = norm(v);
  if (len == 0.0) return 0.0;
  return len * estimate_psi(shape, beta, v / len, window_sizes, options).value;
}

}  // namespace hocomp
