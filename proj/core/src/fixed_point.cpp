#include "mdfs/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mdfs/derivatives.hpp"
#include "mdfs/errors.hpp"

namespace mdfs {

namespace {

std::string param_str(const ModelParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "a=%.17g, b=%.17g", p.a, p.b);
  return buf;
}

// Bisection to (near) machine width, then Newton clamped to the bracket.
double refine_root(const ModelParams& p, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    const double fm = self_consistency_residual(p, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  double r = self_consistency_residual(p, y);
  for (int it = 0; it < 12; ++it) {
    const double e = std::exp(p.a * y + p.b);
    const double s = std::sqrt(1.0 - y);
    const double dr = p.a * e * s - (s > 0.0 ? e / (2.0 * s) : 0.0) - 1.0;
    if (dr == 0.0) break;
    const double yn = y - r / dr;
    if (!(yn >= lo && yn <= hi)) break;
    const double rn = self_consistency_residual(p, yn);
    if (std::abs(rn) >= std::abs(r)) break;
    y = yn;
    r = rn;
  }
  return y;
}

}  // namespace

double self_consistency_residual(const ModelParams& p, double y) {
  return std::exp(p.a * y + p.b) * std::sqrt(1.0 - y) - y;
}

FixedPoint solve_self_consistency(const ModelParams& p, double tol) {
  if (!(p.a > 0.0))
    throw std::domain_error("solve_self_consistency: requires a > 0 (" +
                            param_str(p) + ")");
  if (!(tol > 0.0))
    throw std::domain_error("solve_self_consistency: requires tol > 0");

  const double eps = 1e-15;
  const double lo = eps, hi = 1.0 - eps;

  std::vector<double> nodes{lo};
  bool dense = false;
  if (auto bounds = stationary_bounds(p.a)) {
    const auto [ym, yp] = *bounds;
    if (yp - ym < 1e-8) {
      dense = true;  // nearly tangent bounds: bracket by scanning instead
    } else {
      if (ym > lo && ym < hi) nodes.push_back(ym);
      if (yp > lo && yp < hi) nodes.push_back(yp);
    }
  }
  nodes.push_back(hi);
  if (dense) {
    nodes.clear();
    const int cells = 1000;
    for (int i = 0; i <= cells; ++i)
      nodes.push_back(lo + (hi - lo) * (double(i) / cells));
  }

  FixedPoint fp;
  double fprev = self_consistency_residual(p, nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double fnext = self_consistency_residual(p, nodes[i]);
    if ((fprev < 0.0) != (fnext < 0.0))
      fp.roots.push_back(refine_root(p, nodes[i - 1], nodes[i], fprev));
    fprev = fnext;
  }
  if (fp.roots.empty())
    throw BracketError("solve_self_consistency: no sign change found (" +
                       param_str(p) + ")");
  for (double y : fp.roots)
    if (!(std::abs(self_consistency_residual(p, y)) <= tol))
      throw BracketError("solve_self_consistency: residual above tol (" +
                         param_str(p) + ")");

  std::vector<double> fvals(fp.roots.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < fp.roots.size(); ++i) {
    fvals[i] = f_value(p, std::sqrt(1.0 - fp.roots[i]), fp.roots[i]);
    if (fvals[i] > fvals[best]) best = i;
  }
  for (std::size_t i = 0; i < fp.roots.size(); ++i)
    if (i != best && fvals[best] - fvals[i] < 1e-10)
      throw TieError("solve_self_consistency: two maximizing roots within 1e-10 (" +
                     param_str(p) + "): coexistence line");

  fp.y_star = fp.roots[best];
  fp.x_star = std::sqrt(1.0 - fp.y_star);
  fp.p_star = fvals[best];
  return fp;
}

}  // namespace mdfs
