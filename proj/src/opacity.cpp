#include "hocomp/opacity.hpp"

#include <algorithm>
#include <cmath>

#include "hocomp/detail/golden.hpp"
#include "hocomp/error.hpp"
#include "hocomp/parallel.hpp"

namespace hocomp {
namespace {

double arc_chord_ratio(const InclusionShape& shape, double sa, double sb) {
  const double per = shape.perimeter();
  double arc = std::fmod(std::abs(sa - sb), per);
  arc = std::min(arc, per - arc);
  const double chord = distance(shape.boundary_at(sa), shape.boundary_at(sb));
  // merging points on a smooth boundary: the ratio tends to 1
  if (chord < 1e-12) return 1.0;
  return arc / chord;
}

}  // namespace

OpacityEstimate estimate_lambda(const InclusionShape& shape, std::size_t n_samples) {
  require(n_samples >= 64, "estimate_lambda needs at least 64 boundary samples");
  const double per = shape.perimeter();
  const double step = per / double(n_samples);

  double best = 1.0;
  double best_a = 0.0;
  double best_b = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (std::size_t j = i + 1; j < n_samples; ++j) {
      const double r = arc_chord_ratio(shape, i * step, j * step);
      if (r > best) {
        best = r;
        best_a = i * step;
        best_b = j * step;
      }
    }
  }

  // Alternate one-dimensional refinements of each end within a sample step.
  for (int sweep = 0; sweep < 6; ++sweep) {
    auto [ta, fa] = detail::golden_min(
        [&](double s) { return -arc_chord_ratio(shape, s, best_b); }, best_a - step, best_a + step, 60);
    if (-fa > best) best = -fa, best_a = ta;
    auto [tb, fb] = detail::golden_min(
        [&](double s) { return -arc_chord_ratio(shape, best_a, s); }, best_b - step, best_b + step, 60);
    if (-fb > best) best = -fb, best_b = tb;
  }

  return {best, shape.boundary_at(best_a), shape.boundary_at(best_b), n_samples};
}

double incursion_depth(const InclusionShape& shape, const Path& path) {
  double depth = 0.0;
  const auto v = path.vertices();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const Point2 a = v[i - 1];
    const Point2 d = v[i] - a;
    for (const TranslateInterval& ti : periodic_inside_intervals(shape, a, v[i])) {
      constexpr int kSamples = 64;
      for (int s = 0; s <= kSamples; ++s) {
        const double t = ti.interval.t_begin + (ti.interval.t_end - ti.interval.t_begin) * s / kSamples;
        depth = std::max(depth, -shape.signed_distance(a + d * t - ti.cell));
      }
    }
  }
  return depth;
}

AvoidanceReport verify_avoidance(const InclusionShape& shape, double beta, std::size_t n_trials,
                                 std::uint64_t seed, const SolverOptions& options) {
  require(beta > 0.0, "beta must be positive");
  AvoidanceReport report;
  report.beta = beta;
  report.lambda_hat = estimate_lambda(shape).lambda_hat;
  report.precondition_met = beta > report.lambda_hat;
  report.grid_spacing = 1.0 / options.nodes_per_cell;

  Rng rng(seed);
  auto sample_matrix = [&] {
    for (;;) {
      const Point2 p{rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0)};
      if (!shape.periodic_contains(p)) return p;
    }
  };
  report.trials.resize(n_trials);
  for (AvoidanceTrial& trial : report.trials) {
    trial.from = sample_matrix();
    trial.to = sample_matrix();
  }

  const Medium medium = single_scale_medium(shape, beta);
  parallel_for(n_trials, [&](std::size_t i) {
    AvoidanceTrial& trial = report.trials[i];
    const DistanceResult r = distance_unfolded(medium, trial.from, trial.to, options);
    trial.distance = r.value;
    trial.incursion_depth = incursion_depth(shape, r.path);
    trial.violation = trial.incursion_depth > report.grid_spacing;
  });
  report.violations = std::count_if(report.trials.begin(), report.trials.end(),
                                    [](const AvoidanceTrial& t) { return t.violation; });
  return report;
}

}  // namespace hocomp
