#pragma once

#include <map>
#include <utility>

#include "mdfs/model.hpp"

namespace mdfs {

// Exponent of the two-dimensional integral representation of Z_N:
//   F(x,y) = -x^2/2 - a y^2/2 + log(x + e^{a y + b}).
// Throws std::domain_error when x + e^{a y + b} <= 0 (log of the signed
// integrand is handled separately by the quadrature layer).
double f_value(const ModelParams& p, double x, double y);

// g = dF/db = e^{a y + b} / (x + e^{a y + b}); equals y at the maximizer.
double g_value(const ModelParams& p, double x, double y);

using DerivKey = std::pair<int, int>;   // (i, j) = (d/dx count, d/dy count)
using DerivMap = std::map<DerivKey, double>;

// Checked lookup: requesting an entry that is not stored is an index bug,
// not a zero, and throws std::out_of_range naming the key.
double deriv(const DerivMap& m, int i, int j);

// Closed-form partial derivatives evaluated at a maximizer (x*, y*) with
// x* = sqrt(1 - y*). Stored ranges by total order:
//   f  : derivatives of F, orders 2..4
//   g  : orders 1..3
//   gt : (g - y*)^2, orders 2..4 (value and gradient vanish by construction)
//   gh : g (1 - g), orders 1..2
// D = f20 f02 - f11^2 is the (positive, off criticality) determinant of
// -Hess F at the maximizer.
struct DerivPack {
  double a = 0.0;
  double b = 0.0;
  double y_star = 0.0;
  double x_star = 0.0;
  double D = 0.0;
  DerivMap f, g, gt, gh;
};

DerivPack build_deriv_pack(const ModelParams& p, double y_star);

// Centered-Gaussian moments of the saddle covariance C = (-Hess F)^{-1},
// stored as gamma_{i,j} = D^{(i+j)/2} E_C[X^i Y^j]: polynomials in the
// second derivatives alone. Only even totals 2..8 exist; odd totals vanish
// identically and are never stored.
struct MomentTable {
  DerivMap gamma;
};

MomentTable build_moment_table(const DerivPack& dp);

// Checked lookup matching deriv(): odd or out-of-range keys throw.
double moment(const MomentTable& t, int i, int j);

}  // namespace mdfs
