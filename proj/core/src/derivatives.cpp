#include "mdfs/derivatives.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mdfs {

double f_value(const ModelParams& p, double x, double y) {
  const double t = x + std::exp(p.a * y + p.b);
  if (!(t > 0.0))
    throw std::domain_error("f_value: x + e^{a y + b} must be positive");
  return -0.5 * x * x - 0.5 * p.a * y * y + std::log(t);
}

double g_value(const ModelParams& p, double x, double y) {
  const double e = std::exp(p.a * y + p.b);
  if (!(x + e > 0.0))
    throw std::domain_error("g_value: x + e^{a y + b} must be positive");
  return e / (x + e);
}

double deriv(const DerivMap& m, int i, int j) {
  const auto it = m.find({i, j});
  if (it == m.end())
    throw std::out_of_range("derivative entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is not stored");
  return it->second;
}

DerivPack build_deriv_pack(const ModelParams& p, double y_star) {
  if (!(p.a > 0.0)) throw std::domain_error("build_deriv_pack: requires a > 0");
  if (!(y_star > 0.0 && y_star < 1.0))
    throw std::domain_error("build_deriv_pack: requires y_star in (0,1)");

  const double a = p.a;
  const double y = y_star;
  const double u = 1.0 - y;          // x*^2
  const double x = std::sqrt(u);     // x*
  const double w = 1.0 - 6.0 * y + 6.0 * y * y;

  DerivPack dp;
  dp.a = a;
  dp.b = p.b;
  dp.y_star = y;
  dp.x_star = x;

  auto& f = dp.f;
  f[{2, 0}] = -2.0 + y;
  f[{1, 1}] = -a * y * x;
  f[{0, 2}] = -a + a * a * y * u;
  f[{3, 0}] = 2.0 * u * x;
  f[{2, 1}] = 2.0 * a * y * u;
  f[{1, 2}] = -a * a * y * x * (1.0 - 2.0 * y);
  f[{0, 3}] = a * a * a * y * u * (1.0 - 2.0 * y);
  f[{4, 0}] = -6.0 * u * u;
  f[{3, 1}] = -6.0 * a * y * u * x;
  f[{2, 2}] = 2.0 * a * a * y * u * (1.0 - 3.0 * y);
  f[{1, 3}] = -a * a * a * y * x * w;
  f[{0, 4}] = a * a * a * a * y * u * w;

  auto& g = dp.g;
  g[{1, 0}] = -y * x;
  g[{0, 1}] = a * y * u;
  g[{2, 0}] = 2.0 * y * u;
  g[{1, 1}] = -a * y * x * (1.0 - 2.0 * y);
  g[{0, 2}] = a * a * y * u * (1.0 - 2.0 * y);
  g[{3, 0}] = -6.0 * y * u * x;
  g[{2, 1}] = 2.0 * a * y * u * (1.0 - 3.0 * y);
  g[{1, 2}] = -a * a * y * x * w;
  g[{0, 3}] = a * a * a * y * u * w;

  // (g - y*)^2 by the Leibniz rule; the value and gradient drop out because
  // g = y* at the maximizer.
  const double g10 = g[{1, 0}], g01 = g[{0, 1}];
  const double g20 = g[{2, 0}], g11 = g[{1, 1}], g02 = g[{0, 2}];
  const double g30 = g[{3, 0}], g21 = g[{2, 1}], g12 = g[{1, 2}], g03 = g[{0, 3}];
  auto& gt = dp.gt;
  gt[{2, 0}] = 2.0 * g10 * g10;
  gt[{1, 1}] = 2.0 * g10 * g01;
  gt[{0, 2}] = 2.0 * g01 * g01;
  gt[{3, 0}] = 6.0 * g10 * g20;
  gt[{2, 1}] = 4.0 * g10 * g11 + 2.0 * g01 * g20;
  gt[{1, 2}] = 4.0 * g01 * g11 + 2.0 * g10 * g02;
  gt[{0, 3}] = 6.0 * g01 * g02;
  gt[{4, 0}] = 6.0 * g20 * g20 + 8.0 * g10 * g30;
  gt[{3, 1}] = 6.0 * g20 * g11 + 6.0 * g10 * g21 + 2.0 * g01 * g30;
  gt[{2, 2}] = 4.0 * g11 * g11 + 2.0 * g20 * g02 + 4.0 * g10 * g12 + 4.0 * g01 * g21;
  gt[{1, 3}] = 6.0 * g11 * g02 + 6.0 * g01 * g12 + 2.0 * g10 * g03;
  gt[{0, 4}] = 6.0 * g02 * g02 + 8.0 * g01 * g03;

  // g(1-g) = g - g^2, same device.
  const double c = 1.0 - 2.0 * y;
  auto& gh = dp.gh;
  gh[{1, 0}] = c * g10;
  gh[{0, 1}] = c * g01;
  gh[{2, 0}] = c * g20 - 2.0 * g10 * g10;
  gh[{1, 1}] = c * g11 - 2.0 * g10 * g01;
  gh[{0, 2}] = c * g02 - 2.0 * g01 * g01;

  dp.D = f[{0, 2}] * f[{2, 0}] - f[{1, 1}] * f[{1, 1}];
  return dp;
}

MomentTable build_moment_table(const DerivPack& dp) {
  const double f20 = deriv(dp.f, 2, 0);
  const double f11 = deriv(dp.f, 1, 1);
  const double f02 = deriv(dp.f, 0, 2);

  MomentTable t;
  auto& m = t.gamma;
  // Wick pairings of the covariance adj(-Hess F) = D * C; the coefficient of
  // each monomial is its pairing count (3 = 3!!, 15 = 5!!, 105 = 7!!, ...).
  m[{2, 0}] = -f02;
  m[{1, 1}] = f11;
  m[{0, 2}] = -f20;

  m[{4, 0}] = 3.0 * f02 * f02;
  m[{3, 1}] = -3.0 * f02 * f11;
  m[{2, 2}] = f02 * f20 + 2.0 * f11 * f11;
  m[{1, 3}] = -3.0 * f11 * f20;
  m[{0, 4}] = 3.0 * f20 * f20;

  m[{6, 0}] = -15.0 * f02 * f02 * f02;
  m[{5, 1}] = 15.0 * f02 * f02 * f11;
  m[{4, 2}] = -3.0 * f02 * f02 * f20 - 12.0 * f02 * f11 * f11;
  m[{3, 3}] = 9.0 * f02 * f11 * f20 + 6.0 * f11 * f11 * f11;
  m[{2, 4}] = -3.0 * f02 * f20 * f20 - 12.0 * f11 * f11 * f20;
  m[{1, 5}] = 15.0 * f11 * f20 * f20;
  m[{0, 6}] = -15.0 * f20 * f20 * f20;

  const double f02_2 = f02 * f02, f20_2 = f20 * f20, f11_2 = f11 * f11;
  m[{8, 0}] = 105.0 * f02_2 * f02_2;
  m[{7, 1}] = -105.0 * f02_2 * f02 * f11;
  m[{6, 2}] = 90.0 * f02_2 * f11_2 + 15.0 * f02_2 * f02 * f20;
  m[{5, 3}] = -45.0 * f02_2 * f11 * f20 - 60.0 * f02 * f11_2 * f11;
  m[{4, 4}] = 9.0 * f02_2 * f20_2 + 24.0 * f11_2 * f11_2 +
              72.0 * f02 * f11_2 * f20;
  m[{3, 5}] = -45.0 * f02 * f11 * f20_2 - 60.0 * f20 * f11_2 * f11;
  m[{2, 6}] = 90.0 * f11_2 * f20_2 + 15.0 * f02 * f20_2 * f20;
  m[{1, 7}] = -105.0 * f20_2 * f20 * f11;
  m[{0, 8}] = 105.0 * f20_2 * f20_2;
  return t;
}

double moment(const MomentTable& t, int i, int j) {
  const auto it = t.gamma.find({i, j});
  if (it == t.gamma.end())
    throw std::out_of_range("moment entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is not stored");
  return it->second;
}

}  // namespace mdfs
