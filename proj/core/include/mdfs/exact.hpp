#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mdfs/model.hpp"

namespace mdfs {

// Exact finite-N Gibbs observables obtained by summing the k-dimer sectors.
struct ExactObservables {
  std::int64_t n = 0;
  double log_z = 0.0;
  double pressure = 0.0;        // log_z / n
  double monomer_mean = 0.0;    // <m>
  double monomer_second = 0.0;  // <m^2>
  double susceptibility = 0.0;  // n (<m^2> - <m>^2)
};

// log of n! / ((n - 2k)! k! 2^k), the number of matchings of the complete
// graph on n vertices with exactly k dimers. Requires 0 <= 2k <= n.
double log_matching_count(std::int64_t n, std::int64_t k);

// Sums the n/2 + 1 sector weights in the log domain with a single max
// shift; the monomer variance is accumulated in a second centered pass so
// the susceptibility keeps full precision at large n. log_shift adds a
// constant to every log weight: it moves log_z by exactly that amount and
// must leave every other observable unchanged (diagnostic knob).
// Requires n >= 1 and a >= 0.
ExactObservables observables(const ModelParams& p, std::int64_t n,
                             double log_shift = 0.0);

// Richardson step on a sequence r_i = n_i (q_{n_i} - q*): the last pair
// eliminates the O(1/n) remainder, and the slope is the least-squares
// log-log decay rate of |r_i - limit| (NaN when fewer than two usable
// points remain).
struct RichardsonFit {
  double limit = 0.0;
  double slope = 0.0;
};
RichardsonFit richardson_limit(std::span<const std::int64_t> n,
                               std::span<const double> r);

// Finite-size correction estimates from exact ensembles at the given sizes.
// The limits p*, m* come from the fixed point and chi* from its closed
// form; everything else is independent of the Laplace coefficient layer,
// which is exactly what makes this an oracle for it.
struct ExtrapolationResult {
  std::vector<std::int64_t> sizes;
  std::vector<double> r_pressure, r_monomer, r_susceptibility;
  RichardsonFit pressure, monomer, susceptibility;
};
ExtrapolationResult correction_extrapolation(
    const ModelParams& p, std::span<const std::int64_t> n_list);

}  // namespace mdfs
