#include "hocomp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

#include "hocomp/error.hpp"
#include "hocomp/homogenization.hpp"
#include "hocomp/opacity.hpp"
#include "hocomp/parallel.hpp"

namespace hocomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt2 = std::numbers::sqrt2;

/// Ratio pairs (k, 2k) enter the p > 1 verdict from this k on.
constexpr int kRatioTailStart = 3;

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

RowStatus status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::endpoint_in_obstacle:
      return RowStatus::endpoint_in_obstacle;
    case ErrorCode::disconnected:
      return RowStatus::disconnected;
    default:
      return RowStatus::failed;
  }
}

/// Runs a folded distance and classifies failures instead of throwing.
struct Solved {
  RowStatus status = RowStatus::ok;
  std::string message;
  double distance = kInf;
  double runtime_ms = 0.0;
};

Solved solve(const InclusionShape& shape, const MetricParams& params, Point2 a, Point2 b,
             const SolverOptions& solver) {
  Solved out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.distance = distance_folded(shape, params, a, b, solver).value;
  } catch (const Error& e) {
    out.status = status_of(e.code());
    out.message = e.what();
  }
  out.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double snap_envelope(double beta, const Exponent& p, double epsilon) {
  if (p.is_infinite()) return kInf;
  return 2.0 * beta * kSqrt2 * std::pow(epsilon, 1.0 - p.value());
}

bool growth_ok(double d, double euclid, const MetricParams& params) {
  const double upper = params.p.is_infinite() ? kInf : params.inclusion_weight() * euclid;
  return d >= euclid * (1.0 - kGridTolerance) && d <= upper * (1.0 + kGridTolerance);
}

}  // namespace

const char* to_string(Parity parity) { return parity == Parity::even ? "even" : "odd"; }

const char* to_string(RowStatus status) {
  switch (status) {
    case RowStatus::ok:
      return "ok";
    case RowStatus::inadmissible:
      return "inadmissible";
    case RowStatus::endpoint_in_obstacle:
      return "endpoint_in_obstacle";
    case RowStatus::disconnected:
      return "disconnected";
    case RowStatus::failed:
      return "failed";
  }
  return "failed";
}

double sequence_epsilon(Parity parity, int k) {
  require(k >= 1, "sequence index k must be >= 1");
  return parity == Parity::even ? 1.0 / (2.0 * k) : 1.0 / (2.0 * k + 1.0);
}

void CriticalRunConfig::validate() const {
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive and finite");
  require(!p_list.empty(), "p_list must not be empty");
  require(k_min >= 1, "k_range must start at 1 or later");
  require(k_max >= k_min, "k_range is empty");
  require(window_sizes.size() >= 4, "R_list needs at least 4 window sizes");
  require(shape.periodic_contains(xi2), "xi2 must lie in the inclusion phase");
  require(!shape.periodic_contains(xi1), "xi1 must lie in the matrix phase");
}

double CriticalResult::envelope(const Exponent& p, double epsilon) const {
  return snap_envelope(beta, p, epsilon) + 2.0 * kGridTolerance * psi_ref;
}

Verdict judge_sequences(const Exponent& p, const std::vector<SequenceRecord>& rows, double psi_ref,
                        double beta, double rho) {
  Verdict v;
  v.p = p;
  std::map<int, double> even, odd;
  std::map<int, RowStatus> odd_status;
  for (const SequenceRecord& r : rows) {
    if (!(r.p == p)) continue;
    if (r.parity == Parity::odd) odd_status[r.k] = r.status;
    if (r.status != RowStatus::ok) continue;
    (r.parity == Parity::even ? even : odd)[r.k] = r.distance;
  }
  std::vector<int> ks;
  for (const auto& [k, d] : even)
    if (odd.count(k)) ks.push_back(k);

  if (p.is_infinite()) {
    v.kind = "disconnected-odd";
    std::size_t blocked = 0;
    for (const auto& [k, s] : odd_status)
      if (s == RowStatus::disconnected || s == RowStatus::endpoint_in_obstacle) ++blocked;
    v.passed = !odd_status.empty() && blocked == odd_status.size() && !even.empty();
    v.detail = format("%zu of %zu odd rows disconnected, %zu even rows solved", blocked, odd_status.size(),
                      even.size());
    return v;
  }

  const double pv = p.value();
  if (pv < 1.0) {
    v.kind = "converges";
    if (ks.size() < 2) {
      v.detail = "fewer than 2 solved k";
      return v;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < ks.size(); ++i) {
      if (ks[i - 1] < 2) continue;
      const double prev = std::abs(odd[ks[i - 1]] - even[ks[i - 1]]);
      const double cur = std::abs(odd[ks[i]] - even[ks[i]]);
      if (cur > prev) monotone = false;
    }
    const int k_last = ks.back();
    const double gap = std::abs(odd[k_last] - even[k_last]);
    const double env = snap_envelope(beta, p, sequence_epsilon(Parity::odd, k_last)) +
                       2.0 * kGridTolerance * psi_ref;
    v.passed = monotone && gap <= env;
    v.detail = format("gap(k=%d) = %.6g, envelope %.6g, monotone from k=2: %s", k_last, gap, env,
                      monotone ? "yes" : "no");
  } else if (pv == 1.0) {
    v.kind = "gap";
    if (ks.size() < 3) {
      v.detail = "fewer than 3 solved k";
      return v;
    }
    const double floor = beta * rho * (1.0 - kGapFloorSlack);
    double min_gap = kInf;
    double max_even_dev = 0.0;
    double max_odd_dev = 0.0;
    for (std::size_t i = ks.size() - 3; i < ks.size(); ++i) {
      const int k = ks[i];
      min_gap = std::min(min_gap, odd[k] - even[k]);
      max_even_dev = std::max(max_even_dev, std::abs(even[k] - psi_ref) / psi_ref);
      max_odd_dev = std::max(max_odd_dev, std::abs(odd[k] - (psi_ref + beta * rho)) / psi_ref);
    }
    v.passed = min_gap >= floor && max_even_dev <= kGridTolerance;
    v.detail = format(
        "min gap over 3 largest k = %.6g (floor %.6g), even vs psi %.3g%%, odd vs psi+beta*rho %.3g%%", min_gap,
        floor, 100.0 * max_even_dev, 100.0 * max_odd_dev);
  } else {
    v.kind = "diverges";
    const double target = std::pow(2.0, pv - 1.0);
    const double lo = target * (1.0 - kRatioSlack);
    const double hi = target * (1.0 + kRatioSlack);
    bool growing = true;
    for (std::size_t i = 1; i < ks.size(); ++i)
      if (odd[ks[i]] - psi_ref <= odd[ks[i - 1]] - psi_ref) growing = false;
    std::size_t checked = 0;
    bool in_band = true;
    std::string ratios;
    for (int k : ks) {
      if (k < kRatioTailStart || !odd.count(2 * k)) continue;
      const double r = (odd[2 * k] - psi_ref) / (odd[k] - psi_ref);
      if (!(r >= lo && r <= hi)) in_band = false;
      ratios += format(" %d->%d:%.4g", k, 2 * k, r);
      ++checked;
    }
    v.passed = growing && checked > 0 && in_band;
    v.detail = format("excess growing: %s, ratios in [%.3g, %.3g]:", growing ? "yes" : "no", lo, hi) +
               (checked ? ratios : std::string(" none available"));
  }
  return v;
}

CriticalResult run_critical(const CriticalRunConfig& config) {
  config.validate();
  CriticalResult result;
  result.beta = config.beta;
  result.rho = -periodic_signed_distance(config.shape, config.xi2);
  result.lambda_hat = estimate_lambda(config.shape).lambda_hat;
  result.psi_ref = psi_of(config.shape, config.beta, config.xi2 - config.xi1, config.window_sizes, config.solver);

  for (const Exponent& p : config.p_list)
    for (Parity parity : {Parity::even, Parity::odd})
      for (int k = config.k_min; k <= config.k_max; ++k) {
        SequenceRecord r;
        r.p = p;
        r.parity = parity;
        r.k = k;
        r.epsilon = sequence_epsilon(parity, k);
        r.distance = kInf;
        result.records.push_back(r);
      }

  parallel_for(result.records.size(), [&](std::size_t i) {
    SequenceRecord& r = result.records[i];
    const MetricParams params{config.beta, r.p, r.epsilon};
    if (!r.p.is_infinite()) {
      const Admissibility adm = check_admissible(params, result.lambda_hat);
      if (!adm.admissible) {
        r.status = RowStatus::inadmissible;
        r.message = adm.diagnostic;
        return;
      }
    }
    const Solved s = solve(config.shape, params, config.xi1, config.xi2, config.solver);
    r.status = s.status;
    r.message = s.message;
    r.distance = s.distance;
    r.runtime_ms = s.runtime_ms;
  });

  const double euclid = distance(config.xi1, config.xi2);
  for (const Exponent& p : config.p_list) {
    Verdict v = judge_sequences(p, result.records, result.psi_ref, config.beta, result.rho);
    std::size_t out_of_bounds = 0;
    for (const SequenceRecord& r : result.records)
      if (r.p == p && r.status == RowStatus::ok && !growth_ok(r.distance, euclid, {config.beta, p, r.epsilon}))
        ++out_of_bounds;
    if (out_of_bounds) {
      v.passed = false;
      v.detail += format("; %zu rows outside the growth bounds", out_of_bounds);
    }
    result.verdicts.push_back(std::move(v));
  }
  return result;
}

RateReport run_rate(const InclusionShape& shape, double beta, const Exponent& p, Point2 xi1, Point2 xi2,
                    const std::vector<double>& eps_list, const SolverOptions& solver,
                    const std::vector<double>& window_sizes) {
  require(!p.is_infinite() && p.value() < 1.0, "run_rate needs a finite p < 1");
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive and finite");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    require(eps_list[i] > 0.0, "epsilon values must be positive");
    if (i) require(eps_list[i] < eps_list[i - 1], "epsilon_list must be decreasing");
  }

  RateReport rep;
  rep.exponent = kNaN;
  rep.samples.resize(eps_list.size());
  if (xi1 == xi2) {
    rep.degenerate = true;
    rep.diagnostic = "degenerate endpoints";
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      RateSample& s = rep.samples[i];
      s.epsilon = eps_list[i];
      s.within = true;
    }
    return rep;
  }

  const double lambda_hat = estimate_lambda(shape).lambda_hat;
  std::size_t admissible = 0;
  for (double eps : eps_list)
    if (check_admissible({beta, p, eps}, lambda_hat).admissible) ++admissible;
  if (admissible < 4) fail(ErrorCode::invalid_argument, "insufficient admissible samples (need at least 4)");

  rep.psi_ref = psi_of(shape, beta, xi2 - xi1, window_sizes, solver);
  const double euclid = distance(xi1, xi2);
  const double c1 = 2.0 * beta * kSqrt2;
  const double c2 = 4.0 * beta * kSqrt2;

  parallel_for(eps_list.size(), [&](std::size_t i) {
    RateSample& s = rep.samples[i];
    s.epsilon = eps_list[i];
    const MetricParams params{beta, p, s.epsilon};
    if (!check_admissible(params, lambda_hat).admissible) {
      s.status = RowStatus::inadmissible;
      s.distance = kNaN;
      s.deviation = kNaN;
      return;
    }
    const Solved r = solve(shape, params, xi1, xi2, solver);
    s.status = r.status;
    s.distance = r.distance;
    s.deviation = r.distance - rep.psi_ref;
    s.lower = (euclid - c1 * s.epsilon) * (1.0 - kGridTolerance);
    s.upper = (beta * euclid + c2 * std::pow(s.epsilon, 1.0 - p.value())) * (1.0 + kGridTolerance);
    s.within = s.status == RowStatus::ok && s.distance >= s.lower && s.distance <= s.upper;
  });

  std::vector<double> xs, ys;
  for (const RateSample& s : rep.samples) {
    if (s.status != RowStatus::inadmissible && !s.within) ++rep.envelope_violations;
    if (s.status == RowStatus::ok && std::abs(s.deviation) > 0.0) {
      xs.push_back(std::log(s.epsilon));
      ys.push_back(std::log(std::abs(s.deviation)));
    }
  }
  if (xs.size() >= 2) {
    const double n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double den = n * sxx - sx * sx;
    if (den > 0.0) rep.exponent = (n * sxy - sx * sy) / den;
  }
  if (std::isnan(rep.exponent)) rep.diagnostic = "rate undefined: fewer than 2 nonzero deviations";
  return rep;
}

BoundsReport run_bounds_suite(const InclusionShape& shape, const MetricParams& params, std::size_t n_pairs,
                              std::uint64_t seed, const SolverOptions& solver) {
  params.validate();
  BoundsReport rep;
  rep.params = params;
  rep.lambda_hat = estimate_lambda(shape).lambda_hat;
  if (params.p.is_infinite()) {
    rep.admissible = true;
  } else {
    const Admissibility adm = check_admissible(params, rep.lambda_hat);
    rep.admissible = adm.admissible;
    rep.diagnostic = adm.diagnostic;
  }

  Rng rng(seed);
  rep.pairs.resize(n_pairs);
  for (BoundsPair& bp : rep.pairs) {
    bp.xi1 = {rng.uniform(), rng.uniform()};
    bp.xi2 = {rng.uniform(), rng.uniform()};
  }
  if (!rep.admissible) {
    for (BoundsPair& bp : rep.pairs) bp.status = RowStatus::inadmissible;
    rep.skipped = n_pairs;
    return rep;
  }

  const double eps = params.epsilon;
  parallel_for(n_pairs, [&](std::size_t i) {
    BoundsPair& bp = rep.pairs[i];
    const double euclid = distance(bp.xi1, bp.xi2);
    bp.lower = euclid * (1.0 - kGridTolerance);
    bp.upper = params.p.is_infinite() ? kInf : params.inclusion_weight() * euclid * (1.0 + kGridTolerance);

    const Solved r = solve(shape, params, bp.xi1, bp.xi2, solver);
    bp.status = r.status;
    bp.distance = r.distance;
    if (r.status != RowStatus::ok) return;
    bp.growth_ok = bp.distance >= bp.lower && bp.distance <= bp.upper;

    const Point2 s1 = snap_to_matrix(shape, eps, bp.xi1);
    const Point2 s2 = snap_to_matrix(shape, eps, bp.xi2);
    if (s1 == bp.xi1 && s2 == bp.xi2) {
      bp.snapped_distance = bp.distance;
    } else {
      const Solved rs = solve(shape, params, s1, s2, solver);
      if (rs.status != RowStatus::ok) {
        bp.status = rs.status;
        return;
      }
      bp.snapped_distance = rs.distance;
    }
    bp.snap_gap = std::abs(bp.distance - bp.snapped_distance);
    bp.snap_bound = snap_envelope(params.beta, params.p, eps) +
                    kGridTolerance * std::max(bp.distance, bp.snapped_distance);
    bp.snap_ok = bp.snap_gap <= bp.snap_bound;
  });

  for (const BoundsPair& bp : rep.pairs) {
    if (bp.status != RowStatus::ok)
      ++rep.skipped;
    else if (!bp.growth_ok || !bp.snap_ok)
      ++rep.violations;
  }
  return rep;
}

}  // namespace hocomp
