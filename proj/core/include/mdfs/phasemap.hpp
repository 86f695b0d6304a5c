#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdfs/exact.hpp"
#include "mdfs/laplace.hpp"
#include "mdfs/model.hpp"

namespace mdfs {

enum class Quantity { pressure, monomer, susceptibility };
enum class CurveMethod { analytic, numeric };

const char* to_string(Quantity q);
const char* to_string(CurveMethod m);

// The 1/N coefficient of the chosen observable (lambda, lambda1, lambda2).
double correction_value(const CorrectionSet& c, Quantity q);

// The matching finite-N observable (pressure, monomer_mean, susceptibility).
double observable_value(const ExactObservables& o, Quantity q);

// One locus of sign change of a finite-size correction in the (J,h) plane.
struct CurvePoint {
  double j = 0.0;
  double h = 0.0;  // midpoint of the final bracket
  Quantity quantity = Quantity::pressure;
  CurveMethod method = CurveMethod::analytic;
  double bracket_width = 0.0;
};

// Points ordered by j. Grid values where no admissible sign change exists,
// or where evaluation kept failing (coexistence, criticality), are omitted
// and recorded in notes instead of aborting the sweep.
struct CurveResult {
  std::vector<CurvePoint> points;
  std::vector<std::string> notes;
};

// For each J on the grid, bisect in h for a sign change of the analytic
// correction of quantity q. If the bracket ends do not already disagree in
// sign, a fixed scan locates the lowest-h sign change first. Each emitted
// point is re-verified to have opposite signs at h -+ 2 tol. Work across
// grid values runs on `threads` threads (0 = hardware count), always capped
// by the MDFS_THREADS environment variable; output order is deterministic.
CurveResult sign_change_curve(Quantity q, std::span<const double> j_grid,
                              std::pair<double, double> h_bracket, double tol,
                              int threads = 0);

// Fully analytic-free counterpart: bisects in h on the sign of the forward
// differences q_{n'} - q_n of exact finite-n observables over consecutive
// sizes in n_list. Away from the curve all pairs agree in sign; inside the
// narrow window where they disagree, the largest-size pair (the most
// asymptotic one) steers the bisection. The final point is verified to
// reach full sign consensus on both sides at a distance max(4 tol, 0.02).
CurveResult numeric_monotonicity_curve(Quantity q,
                                       std::span<const double> j_grid,
                                       std::pair<double, double> h_bracket,
                                       std::span<const std::int64_t> n_list,
                                       double tol, int threads = 0);

}  // namespace mdfs
