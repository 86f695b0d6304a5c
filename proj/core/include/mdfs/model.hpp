#pragma once

#include <optional>
#include <utility>

namespace mdfs {

// Attractive monomer-dimer model on the complete graph with N vertices,
//   H_N(D) = -N (a/2 m^2 + b m),  m = monomer density of the matching D,
// and dimer activity N^{-|D|}. The asymptotic layers require a > 0; the
// exact ensemble also accepts a = 0.
struct ModelParams {
  double a = 1.0;  // attraction strength
  double b = 0.0;  // monomer field
};

// Ferromagnetic (J,h) parameterization: a = 2J, b = h - J.
ModelParams from_jh(double j, double h);

struct CriticalValues {
  double a_c;  // (3 + 2 sqrt 2) / 2
  double y_c;  // 2 - sqrt 2, the merged stationary bound
};

CriticalValues critical_point() noexcept;

// The two roots y- <= y+ of 2a y^2 - (2a+1) y + 2 = 0 when they lie inside
// (0,1), i.e. for a at or above the critical coupling. They split (0,1) into
// the subintervals that each hold at most one solution of the consistency
// equation. Empty below criticality (the small-a root pair sits outside the
// unit interval and is irrelevant).
std::optional<std::pair<double, double>> stationary_bounds(double a);

}  // namespace mdfs
