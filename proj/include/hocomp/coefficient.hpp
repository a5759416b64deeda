#pragma once

#include <span>
#include <string>

#include "hocomp/geometry.hpp"

namespace hocomp {

/// Contrast exponent p: a positive real or the hard-obstacle symbol.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinite() { return Exponent(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  double value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(bool infinite, double value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  double value_;
};

struct MetricParams {
  double beta = 1.0;
  Exponent p = Exponent::finite(1.0);
  double epsilon = 1.0;

  void validate() const;
  /// beta * epsilon^(-p) on the inclusion phase, +inf for hard obstacles.
  double inclusion_weight() const;
};

double eval_single_scale(const InclusionShape& shape, double beta, Point2 x);

/// Coefficient a_{p,eps} at an already unfolded point x.
double eval_contrast(const InclusionShape& shape, const MetricParams& params, Point2 x);

struct Admissibility {
  bool admissible = false;
  std::string diagnostic;
};

Admissibility check_admissible(const MetricParams& params, double lambda);

/// Piecewise-constant conformal factor in unfolded coordinates: 1 on the
/// matrix, inclusion_weight on Omega_g + Z^2.
struct Medium {
  InclusionShape shape;
  double inclusion_weight = 1.0;

  bool is_obstacle() const;
  double at(Point2 x) const { return shape.periodic_contains(x) ? inclusion_weight : 1.0; }

  /// Exact integral of the factor along [a,b].
  double segment_cost(Point2 a, Point2 b) const;
  double polyline_cost(std::span<const Point2> vertices) const;
};

Medium single_scale_medium(const InclusionShape& shape, double beta);
Medium unfolded_medium(const InclusionShape& shape, const MetricParams& params);

}  // namespace hocomp
