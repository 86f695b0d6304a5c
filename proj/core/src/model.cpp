#include "mdfs/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdfs {

ModelParams from_jh(double j, double h) { return ModelParams{2.0 * j, h - j}; }

CriticalValues critical_point() noexcept {
  const double s2 = std::sqrt(2.0);
  return CriticalValues{(3.0 + 2.0 * s2) / 2.0, 2.0 - s2};
}

std::optional<std::pair<double, double>> stationary_bounds(double a) {
  if (!(a > 0.0)) throw std::domain_error("stationary_bounds: requires a > 0");
  double disc = 4.0 * a * a - 12.0 * a + 1.0;
  // At the critical coupling the discriminant is an exact zero that rounding
  // can push slightly negative; clamp within a few ulps of the cancellation.
  const double noise =
      64.0 * std::numeric_limits<double>::epsilon() * (4.0 * a * a + 12.0 * a + 1.0);
  if (disc < 0.0 && disc > -noise) disc = 0.0;
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double y_minus = (2.0 * a + 1.0 - s) / (4.0 * a);
  const double y_plus = (2.0 * a + 1.0 + s) / (4.0 * a);
  // The small-a branch of the quadratic has both roots at or beyond 1.
  if (!(y_minus > 0.0 && y_plus < 1.0)) return std::nullopt;
  return std::make_pair(y_minus, y_plus);
}

}  // namespace mdfs
