#pragma once

#include <cstdint>

#include "mdfs/model.hpp"

namespace mdfs {

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;        // rule error estimate + truncated tail bound
  std::int64_t evaluations = 0;  // integrand evaluations spent
};

// Z_n by direct adaptive tensor Gauss-Legendre integration of
// (n sqrt(a) / 2 pi) * Phi(x,y)^n over a rectangle sized from 1d scans of
// the integrand so that the discarded tail is ~1e-20 of the peak. The
// integrand is signed for odd n (Phi < 0 left of the zero line) and the
// small negative lobe matters at small n, so the rectangle covers it
// whenever it is alive at the requested accuracy.
//
// rect_scale inflates the rectangle about its center; doubling it must not
// move the value by more than est_error. Throws ConvergenceError when
// refinement stalls, std::domain_error for a <= 0, n < 1 or n > 64 (larger
// n is the asymptotic layer's job and only erodes quadrature accuracy).
QuadratureResult integral_partition(const ModelParams& p, int n,
                                    double rel_tol = 1e-12,
                                    double rect_scale = 1.0);

struct Cov2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;
};

// E[X^i Y^j] for a centered bivariate Gaussian via the Stein recursion
//   M(i,j) = (i-1) c_xx M(i-2,j) + j c_xy M(i-1,j-1).
// Exact up to rounding; odd i+j gives 0. Throws std::domain_error unless
// cov is positive definite.
double gaussian_moment(const Cov2& cov, int i, int j);

// Same moment through a Cholesky transform and tensor Gauss-Legendre over
// [-9,9]^2 in standardized coordinates: an independent cross-check of the
// recursion (and of the closed-form moment table built from it).
double gaussian_moment_quadrature(const Cov2& cov, int i, int j);

}  // namespace mdfs
