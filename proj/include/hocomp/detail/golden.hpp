#pragma once

#include <cmath>
#include <utility>

namespace hocomp::detail {

/// Golden-section search for the minimum of f on [lo, hi]. Returns the best
/// point seen and its value. +inf values are assumed to lie toward hi.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double best_t = lo;
  double best_f = f(lo);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 < best_f) best_f = f1, best_t = x1;
    if (f2 < best_f) best_f = f2, best_t = x2;
    if (f1 < f2 || (std::isinf(f1) && std::isinf(f2))) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 < best_f) best_f = f1, best_t = x1;
  if (f2 < best_f) best_f = f2, best_t = x2;
  return {best_t, best_f};
}

}  // namespace hocomp::detail
