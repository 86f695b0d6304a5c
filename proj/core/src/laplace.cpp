#include "mdfs/laplace.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mdfs/errors.hpp"
#include "mdfs/fixed_point.hpp"

namespace mdfs {

namespace {

constexpr double kFact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};

// Taylor coefficient F_{i,j} / (i! j!).
double fc(const DerivPack& dp, int i, int j) {
  return deriv(dp.f, i, j) / (kFact[i] * kFact[j]);
}

}  // namespace

double coeff_L(const DerivPack& dp, const MomentTable& mt,
               MomentScaling scaling) {
  const double D = dp.D;

  double quartic = 0.0;  // fourth-order Taylor terms against order-4 moments
  for (int i = 0; i <= 4; ++i)
    quartic += fc(dp, i, 4 - i) * moment(mt, i, 4 - i);

  double cubic_sq = 0.0;  // squared third-order form against order-6 moments
  for (int i1 = 0; i1 <= 3; ++i1)
    for (int i2 = 0; i2 <= 3; ++i2)
      cubic_sq += fc(dp, i1, 3 - i1) * fc(dp, i2, 3 - i2) *
                  moment(mt, i1 + i2, 6 - i1 - i2);

  if (scaling == MomentScaling::per_order)
    return quartic / (D * D) + 0.5 * cubic_sq / (D * D * D);
  return quartic / D + cubic_sq / (D * D);
}

KCoeffs coeff_K(const DerivPack& dp, const DerivMap& g_derivs,
                const MomentTable& mt) {
  const double D = dp.D;

  double quad = 0.0;  // order-2 G terms against the covariance
  for (int i = 0; i <= 2; ++i)
    quad += deriv(g_derivs, i, 2 - i) / (kFact[i] * kFact[2 - i]) *
            moment(mt, i, 2 - i);

  double cross = 0.0;  // cubic F against the G gradient, order-4 moments
  for (int i1 = 0; i1 <= 3; ++i1)
    for (int i2 = 0; i2 <= 1; ++i2)
      cross += fc(dp, i1, 3 - i1) * deriv(g_derivs, i2, 1 - i2) *
               moment(mt, i1 + i2, 4 - i1 - i2);

  KCoeffs k;
  k.k1 = quad / D;
  k.k = k.k1 + cross / (D * D);
  return k;
}

double coeff_M(const DerivPack& dp, const DerivMap& g_derivs,
               const MomentTable& mt) {
  if (std::abs(deriv(g_derivs, 1, 0)) > 1e-12 ||
      std::abs(deriv(g_derivs, 0, 1)) > 1e-12)
    throw std::invalid_argument("coeff_M: G gradient must vanish at the maximizer");

  const double D = dp.D;
  const double D2 = D * D, D3 = D2 * D, D4 = D2 * D2;

  auto gc = [&](int i, int j) {
    return deriv(g_derivs, i, j) / (kFact[i] * kFact[j]);
  };

  double t_quartic = 0.0;  // order-4 G terms
  for (int i = 0; i <= 4; ++i) t_quartic += gc(i, 4 - i) * moment(mt, i, 4 - i);

  double t_cubic = 0.0;  // cubic F against cubic G
  for (int i1 = 0; i1 <= 3; ++i1)
    for (int i2 = 0; i2 <= 3; ++i2)
      t_cubic += fc(dp, i1, 3 - i1) * gc(i2, 3 - i2) *
                 moment(mt, i1 + i2, 6 - i1 - i2);

  double t_mixed = 0.0;  // quartic F against quadratic G
  for (int i1 = 0; i1 <= 4; ++i1)
    for (int i2 = 0; i2 <= 2; ++i2)
      t_mixed += fc(dp, i1, 4 - i1) * gc(i2, 2 - i2) *
                 moment(mt, i1 + i2, 6 - i1 - i2);

  double t_cubic_sq = 0.0;  // squared cubic F against quadratic G
  for (int i1 = 0; i1 <= 3; ++i1)
    for (int i2 = 0; i2 <= 3; ++i2)
      for (int i3 = 0; i3 <= 2; ++i3)
        t_cubic_sq += fc(dp, i1, 3 - i1) * fc(dp, i2, 3 - i2) * gc(i3, 2 - i3) *
                      moment(mt, i1 + i2 + i3, 8 - i1 - i2 - i3);

  return t_quartic / D2 + t_cubic / D3 + t_mixed / D3 + 0.5 * t_cubic_sq / D4;
}

CorrectionSet corrections(const ModelParams& p, MomentScaling scaling,
                          double root_tol) {
  const FixedPoint fp = solve_self_consistency(p, root_tol);
  const DerivPack dp = build_deriv_pack(p, fp.y_star);
  if (dp.D < 1e-10) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "corrections: determinant %.3e below cutoff at a=%.17g, b=%.17g",
                  dp.D, p.a, p.b);
    throw CriticalError(buf);
  }
  const MomentTable mt = build_moment_table(dp);

  // (g - m*)^2 has an identically zero gradient; store it explicitly so the
  // ratio coefficients can consume one uniform derivative map.
  DerivMap gt = dp.gt;
  gt[{1, 0}] = 0.0;
  gt[{0, 1}] = 0.0;

  const double l = coeff_L(dp, mt, scaling);
  const KCoeffs kg = coeff_K(dp, dp.g, mt);
  const KCoeffs kgt = coeff_K(dp, gt, mt);
  const double mgt = coeff_M(dp, gt, mt);
  const KCoeffs kgh = coeff_K(dp, dp.gh, mt);

  CorrectionSet c;
  c.p_star = fp.p_star;
  c.m_star = fp.y_star;
  c.chi_star = fp.y_star * (1.0 - fp.y_star) + kgt.k1;
  c.lambda = -0.5 * std::log(dp.D / p.a);
  c.lambda1 = kg.k;
  c.lambda2 = kgh.k - kgt.k1 * l + mgt - kg.k * kg.k;
  c.l_coeff = l;
  c.k_g = kg.k;
  c.k1_gt = kgt.k1;
  c.m_gt = mgt;
  c.k_gh = kgh.k;
  c.D = dp.D;
  return c;
}

double chi_star_closed_form(const ModelParams& p, double m_star) {
  const double denom = 2.0 - m_star - 2.0 * p.a * m_star * (1.0 - m_star);
  if (denom <= 1e-12) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "chi_star_closed_form: denominator %.3e at a=%.17g", denom, p.a);
    throw CriticalError(buf);
  }
  return 2.0 * m_star * (1.0 - m_star) / denom;
}

}  // namespace mdfs
