#pragma once

#include "mdfs/derivatives.hpp"
#include "mdfs/model.hpp"

namespace mdfs {

// Scaling convention for the Gaussian-moment factors inside the
// second-order coefficient of the normalization integral.
//
// per_order divides each moment of total order 2k by D^k, so every term is
// an honest expectation under the saddle covariance, and the square of the
// cubic form carries the 1/2 of the exponential expansion. That convention
// reduces to the classical one-dimensional second-order correction when the
// Hessian is diagonal and is the default everywhere.
//
// flat applies a single 1/D (quartic sum) resp. 1/D^2 (cubic-pair sum) and
// no 1/2. It is kept only so the validation suite can rule it out against
// the exact ensemble; see docs/asymptotics.md.
enum class MomentScaling { per_order, flat };

// The 1/N data of the three observable expansions
//   p_N   = p*   + Lambda  / N + O(N^-2)
//   mu_N  = m*   + Lambda1 / N + O(N^-2)
//   chi_N = chi* + Lambda2 / N + O(N^-2)
// together with the raw coefficients they are assembled from.
struct CorrectionSet {
  double p_star = 0.0;
  double m_star = 0.0;
  double chi_star = 0.0;
  double lambda = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double l_coeff = 0.0;  // second-order coefficient of the normalization integral
  double k_g = 0.0;      // first-order ratio coefficient, G = g
  double k1_gt = 0.0;    // quadratic part,                G = (g - m*)^2
  double m_gt = 0.0;     // second-order ratio coefficient, G = (g - m*)^2
  double k_gh = 0.0;     // first-order ratio coefficient,  G = g (1 - g)
  double D = 0.0;
};

// N^2 (p_N - p* - Lambda/N) -> coeff_L as N grows.
double coeff_L(const DerivPack& dp, const MomentTable& mt,
               MomentScaling scaling = MomentScaling::per_order);

// I_N'(G)/I_N'(1) = G* + K/N + O(N^-2); k1 is the purely quadratic part
// (the order-2 G-derivatives paired with the covariance), k the full
// coefficient including the cubic-F times gradient-G cross term. G must
// supply derivative orders 1 and 2.
struct KCoeffs {
  double k1 = 0.0;
  double k = 0.0;
};
KCoeffs coeff_K(const DerivPack& dp, const DerivMap& g_derivs,
                const MomentTable& mt);

// Second-order ratio coefficient for a G whose value and gradient vanish at
// the maximizer (throws std::invalid_argument otherwise): the O(N^-2) term
// of I_N'(G)/I_N'(1) before the normalization correction is divided out.
// G must supply derivative orders 1 (zero entries) through 4.
double coeff_M(const DerivPack& dp, const DerivMap& g_derivs,
               const MomentTable& mt);

// Full 1/N correction set at the thermodynamic branch for parameters p.
// Propagates TieError from the fixed point; throws CriticalError when
// D < 1e-10 (correction coefficients blow up at criticality).
CorrectionSet corrections(const ModelParams& p,
                          MomentScaling scaling = MomentScaling::per_order,
                          double root_tol = 1e-12);

// chi* = 2 m*(1-m*) / (2 - m* - 2a m*(1-m*)): algebraically equal to the
// assembled m*(1-m*) + k1_gt form. Throws CriticalError when the
// denominator (= D/a) drops to 1e-12.
double chi_star_closed_form(const ModelParams& p, double m_star);

}  // namespace mdfs
