// Independent reference implementations used only by the test suite.
// Everything here recomputes target quantities by a different route than
// the library: numerical differentiation instead of closed forms, direct
// combinatorial recurrences instead of log-gamma, dense scans instead of
// structured bracketing.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Fn2 = std::function<long double(long double, long double)>;

// Mixed partial d^{i+j} f / dx^i dy^j by nested central differences in
// extended precision with one Richardson step. `y_scale` shrinks the y
// step when y-derivatives grow with the interaction strength.
long double mixed_partial(const Fn2& f, long double x, long double y, int i,
                          int j, long double y_scale = 1.0L);

// Long-double surfaces differentiated by the oracle: the log-integrand,
// the monomer symbol, and its centered-square / variance-style composites.
long double surface_f(long double a, long double b, long double x,
                      long double y);
long double surface_g(long double a, long double b, long double x,
                      long double y);
long double surface_g_centered_sq(long double a, long double b, long double x,
                                  long double y, long double m_star);
long double surface_g_bernoulli(long double a, long double b, long double x,
                                long double y);

// Number of k-edge matchings of the complete graph on n vertices for all k,
// via the vertex-deletion recurrence (no factorials involved).
std::vector<long double> matching_counts(int n);

// Partition sums weighted by 1, m, m^2, computed directly from the
// matching counts. Valid for small n only.
struct BruteSums {
  long double z, zm, zm2;
};
BruteSums brute_partition(double a, double b, int n);

// All roots of e^{a y + b} sqrt(1 - y) - y in (0,1) by dense scan plus
// plain bisection, ignorant of any stationary-interval structure.
std::vector<double> scan_roots(double a, double b, int grid = 4000);

}  // namespace oracle
