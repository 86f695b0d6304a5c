#pragma once

#include <vector>

#include "mdfs/model.hpp"

namespace mdfs {

// Solutions of the mean-field consistency equation
//   e^{a y + b} sqrt(1 - y) = y,   y in (0,1),
// together with the selected thermodynamic branch: the root maximizing
// F(sqrt(1-y), y), whose value is the limiting pressure.
struct FixedPoint {
  std::vector<double> roots;  // ascending, residual <= tol each
  double y_star = 0.0;        // maximizing root (= limiting monomer density)
  double x_star = 0.0;        // sqrt(1 - y_star)
  double p_star = 0.0;        // F(x_star, y_star)
};

// Residual form used everywhere: r(y) = e^{a y + b} sqrt(1-y) - y.
// r(0+) = e^b > 0 and r(1-) = -1 < 0, so a root always exists.
double self_consistency_residual(const ModelParams& p, double y);

// Brackets each subinterval cut out by the stationary bounds (falling back
// to a dense sign scan when the bounds nearly coincide), bisects to machine
// width and polishes with bracket-clamped Newton steps.
//
// Throws TieError when two roots maximize F within 1e-10 (coexistence),
// BracketError if refinement fails, std::domain_error for a <= 0 / tol <= 0.
FixedPoint solve_self_consistency(const ModelParams& p, double tol = 1e-12);

}  // namespace mdfs
