#include "hocomp/coefficient.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "hocomp/error.hpp"

namespace hocomp {

Exponent Exponent::finite(double p) {
  require(p > 0.0 && std::isfinite(p), "exponent p must be a positive real or inf");
  return Exponent(false, p);
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

void MetricParams::validate() const {
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
}

double MetricParams::inclusion_weight() const {
  if (p.is_infinite()) return std::numeric_limits<double>::infinity();
  return beta * std::pow(epsilon, -p.value());
}

double eval_single_scale(const InclusionShape& shape, double beta, Point2 x) {
  return shape.periodic_contains(x) ? beta : 1.0;
}

double eval_contrast(const InclusionShape& shape, const MetricParams& params, Point2 x) {
  return shape.periodic_contains(x) ? params.inclusion_weight() : 1.0;
}

Admissibility check_admissible(const MetricParams& params, double lambda) {
  require(lambda > 0.0, "lambda must be positive");
  if (!(params.beta > lambda)) return {false, "beta <= lambda"};
  if (params.p.is_infinite()) return {true, "ok"};
  if (!(std::pow(params.epsilon, params.p.value()) < params.beta / lambda))
    return {false, "epsilon^p >= beta/lambda"};
  return {true, "ok"};
}

bool Medium::is_obstacle() const { return std::isinf(inclusion_weight); }

double Medium::segment_cost(Point2 a, Point2 b) const {
  const double len = distance(a, b);
  if (len == 0.0) return 0.0;
  const double inside = periodic_inside_length(shape, a, b);
  if (inside <= 0.0) return len;
  if (is_obstacle()) return std::numeric_limits<double>::infinity();
  return (len - inside) + inclusion_weight * inside;
}

double Medium::polyline_cost(std::span<const Point2> vertices) const {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) total += segment_cost(vertices[i - 1], vertices[i]);
  return total;
}

Medium single_scale_medium(const InclusionShape& shape, double beta) {
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  return Medium{shape, beta};
}

Medium unfolded_medium(const InclusionShape& shape, const MetricParams& params) {
  params.validate();
  return Medium{shape, params.inclusion_weight()};
}

}  // namespace hocomp
