#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hocomp/coefficient.hpp"
#include "hocomp/geometry.hpp"
#include "hocomp/grid_solver.hpp"

namespace hocomp {

/// Relative allowance for grid metrication in every bound check.
inline constexpr double kGridTolerance = 0.02;
/// Relative slack on the p = 1 gap floor beta * rho.
inline constexpr double kGapFloorSlack = 0.05;
/// Allowed band around 2^(p-1) for excess(2k) / excess(k) when p > 1.
inline constexpr double kRatioSlack = 0.3;

enum class Parity { even, odd };
enum class RowStatus { ok, inadmissible, endpoint_in_obstacle, disconnected, failed };

const char* to_string(Parity parity);
const char* to_string(RowStatus status);

/// Period of the k-th member of the two sequences: 1/(2k) and 1/(2k+1).
double sequence_epsilon(Parity parity, int k);

struct CriticalRunConfig {
  InclusionShape shape = InclusionShape::disk({0.5, 0.5}, 0.25);
  double beta = 2.0;
  std::vector<Exponent> p_list = {Exponent::finite(0.5), Exponent::finite(1.0), Exponent::finite(2.0),
                                  Exponent::infinite()};
  int k_min = 1;
  int k_max = 12;
  Point2 xi1{0.0, 0.0};
  Point2 xi2{0.5, 0.5};
  SolverOptions solver;
  /// Window sizes for the psi reference.
  std::vector<double> window_sizes = {4.0, 8.0, 16.0, 32.0};

  void validate() const;
};

struct SequenceRecord {
  Exponent p = Exponent::finite(1.0);
  Parity parity = Parity::even;
  int k = 0;
  double epsilon = 0.0;
  RowStatus status = RowStatus::ok;
  std::string message;
  double distance = 0.0;
  double runtime_ms = 0.0;
};

struct Verdict {
  Exponent p = Exponent::finite(1.0);
  std::string kind;
  bool passed = false;
  std::string detail;
};

struct CriticalResult {
  double psi_ref = 0.0;  // psi(xi2 - xi1)
  double rho = 0.0;      // inradius of the inclusion at xi2
  double lambda_hat = 0.0;
  double beta = 0.0;
  std::vector<SequenceRecord> records;  // ordered by (p, parity, k)
  std::vector<Verdict> verdicts;

  /// Snapping envelope 2 beta sqrt(2) eps^(1-p) plus the grid allowance.
  double envelope(const Exponent& p, double epsilon) const;
};

CriticalResult run_critical(const CriticalRunConfig& config);

/// Verdict for one exponent from its even and odd rows. Exposed so the rules
/// can be exercised on synthetic rows.
Verdict judge_sequences(const Exponent& p, const std::vector<SequenceRecord>& rows, double psi_ref,
                        double beta, double rho);

struct RateSample {
  double epsilon = 0.0;
  RowStatus status = RowStatus::ok;
  double distance = 0.0;
  double deviation = 0.0;  // distance - psi_ref
  double lower = 0.0;
  double upper = 0.0;
  bool within = false;
};

struct RateReport {
  double psi_ref = 0.0;
  double exponent = 0.0;  // NaN when undefined
  bool degenerate = false;
  std::string diagnostic;
  std::vector<RateSample> samples;
  std::size_t envelope_violations = 0;
};

RateReport run_rate(const InclusionShape& shape, double beta, const Exponent& p, Point2 xi1, Point2 xi2,
                    const std::vector<double>& eps_list, const SolverOptions& solver = {},
                    const std::vector<double>& window_sizes = {4.0, 8.0, 16.0, 32.0});

struct BoundsPair {
  Point2 xi1;
  Point2 xi2;
  RowStatus status = RowStatus::ok;
  double distance = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double snapped_distance = 0.0;
  double snap_gap = 0.0;
  double snap_bound = 0.0;
  bool growth_ok = false;
  bool snap_ok = false;
};

struct BoundsReport {
  MetricParams params;
  double lambda_hat = 0.0;
  bool admissible = false;
  std::string diagnostic;
  std::vector<BoundsPair> pairs;
  std::size_t violations = 0;
  std::size_t skipped = 0;
};

BoundsReport run_bounds_suite(const InclusionShape& shape, const MetricParams& params, std::size_t n_pairs,
                              std::uint64_t seed, const SolverOptions& solver = {});

}  // namespace hocomp
