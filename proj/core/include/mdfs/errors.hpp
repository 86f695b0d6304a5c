#pragma once

#include <stdexcept>
#include <string>

namespace mdfs {

// Two stationary points maximize the pressure functional within tolerance:
// the parameters sit on the first-order transition line, where one-phase
// quantities are not defined.
class TieError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Hessian determinant at the maximizer is numerically zero; the 1/N
// correction coefficients diverge there and are refused.
class CriticalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracketing failed. The residual has fixed signs at both ends of
// (0,1), so this signals a bug rather than a bad input.
class BracketError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Adaptive quadrature exhausted its refinement budget before reaching the
// requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mdfs
