#include "mdfs/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdfs/fixed_point.hpp"
#include "mdfs/laplace.hpp"

namespace mdfs {

double log_matching_count(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || 2 * k > n)
    throw std::domain_error("log_matching_count: requires 0 <= 2k <= n");
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(n - 2 * k) + 1.0) -
         std::lgamma(double(k) + 1.0) - double(k) * std::log(2.0);
}

ExactObservables observables(const ModelParams& p, std::int64_t n,
                             double log_shift) {
  if (n < 1) throw std::domain_error("observables: requires n >= 1");
  if (!(p.a >= 0.0)) throw std::domain_error("observables: requires a >= 0");

  const std::int64_t kmax = n / 2;
  std::vector<double> logw(kmax + 1);
  std::vector<double> mk(kmax + 1);
  const double logn = std::log(double(n));
  double top = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k <= kmax; ++k) {
    const double m = double(n - 2 * k) / double(n);
    mk[k] = m;
    logw[k] = log_matching_count(n, k) - double(k) * logn +
              double(n) * (0.5 * p.a * m * m + p.b * m) + log_shift;
    if (logw[k] > top) top = logw[k];
  }

  long double s0 = 0.0L, s1 = 0.0L;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    const long double w = std::exp(logw[k] - top);
    s0 += w;
    s1 += w * mk[k];
  }
  const double mu = double(s1 / s0);

  // Centered second pass keeps the variance fully accurate even when it is
  // tiny compared to <m>^2 (it always is for large n).
  long double sv = 0.0L;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    const long double d = mk[k] - mu;
    sv += std::exp(logw[k] - top) * d * d;
  }
  const double var = double(sv / s0);

  ExactObservables o;
  o.n = n;
  // the probe shift must cancel exactly from every reported value
  o.log_z = top + double(std::log(s0)) - log_shift;
  o.pressure = o.log_z / double(n);
  o.monomer_mean = mu;
  o.monomer_second = var + mu * mu;
  o.susceptibility = double(n) * var;
  return o;
}

RichardsonFit richardson_limit(std::span<const std::int64_t> n,
                               std::span<const double> r) {
  if (n.size() != r.size() || n.size() < 2)
    throw std::invalid_argument("richardson_limit: need >= 2 matching points");
  for (std::size_t i = 1; i < n.size(); ++i)
    if (n[i] <= n[i - 1])
      throw std::invalid_argument("richardson_limit: sizes must increase");

  RichardsonFit fit;
  const std::size_t k = n.size() - 1;
  const double rho = double(n[k]) / double(n[k - 1]);
  fit.limit = (rho * r[k] - r[k - 1]) / (rho - 1.0);

  // Least-squares slope of log|r_i - limit| vs log n_i over the usable
  // points; the extrapolated pair itself still contributes a nonzero
  // difference of order 1/n.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  const double floor_ = 1e-13 * std::max(1.0, std::abs(fit.limit));
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double d = std::abs(r[i] - fit.limit);
    if (d < floor_) continue;
    const double lx = std::log(double(n[i]));
    const double ly = std::log(d);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt < 2) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
  } else {
    fit.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  }
  return fit;
}

ExtrapolationResult correction_extrapolation(
    const ModelParams& p, std::span<const std::int64_t> n_list) {
  if (n_list.size() < 4)
    throw std::invalid_argument("correction_extrapolation: need >= 4 sizes");

  const FixedPoint fp = solve_self_consistency(p);
  const double p_star = fp.p_star;
  const double m_star = fp.y_star;
  const double chi_star = chi_star_closed_form(p, m_star);

  ExtrapolationResult res;
  res.sizes.assign(n_list.begin(), n_list.end());
  for (std::int64_t n : n_list) {
    const ExactObservables o = observables(p, n);
    res.r_pressure.push_back(double(n) * (o.pressure - p_star));
    res.r_monomer.push_back(double(n) * (o.monomer_mean - m_star));
    res.r_susceptibility.push_back(double(n) * (o.susceptibility - chi_star));
  }
  res.pressure = richardson_limit(res.sizes, res.r_pressure);
  res.monomer = richardson_limit(res.sizes, res.r_monomer);
  res.susceptibility = richardson_limit(res.sizes, res.r_susceptibility);
  return res;
}

}  // namespace mdfs
