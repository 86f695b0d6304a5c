// Acceptance gate: every release-blocking numerical claim of the library,
// checked end to end with tolerances pinned in this file. Prints one
// [PASS]/[FAIL] line per criterion and exits nonzero when any fails.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "mdfs/derivatives.hpp"
#include "mdfs/errors.hpp"
#include "mdfs/exact.hpp"
#include "mdfs/fixed_point.hpp"
#include "mdfs/laplace.hpp"
#include "mdfs/model.hpp"
#include "mdfs/phasemap.hpp"
#include "mdfs/quadrature.hpp"

#include "oracles.hpp"

namespace {

using namespace mdfs;

struct Gate {
  bool all_pass = true;
  void report(const char* id, bool ok, const std::string& detail) {
    std::printf("[%s] %-3s %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok) all_pass = false;
  }
  void info(const char* id, const std::string& detail) {
    std::printf("[info] %-3s %s\n", id, detail.c_str());
  }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// A1: the adaptive quadrature of the integral representation reproduces the
// combinatorial partition sum.
void a1(Gate& g) {
  double worst = 0.0;
  for (int n : {2, 3, 4, 8, 16})
    for (double a : {0.5, 1.0, 2.0})
      for (double b : {-1.0, 0.0, 0.5}) {
        const ModelParams p{a, b};
        const double z = std::exp(observables(p, n).log_z);
        const double q = integral_partition(p, n).value;
        worst = std::max(worst, std::fabs(q - z) / z);
      }
  g.report("A1", worst < 1e-8,
           fmt("integral vs combinatorial partition sum over 45 cases: "
               "max rel err %.2e (tol 1e-8)",
               worst));
}

const ModelParams kDerivPoints[] = {
    {1.0, 0.0}, {0.5, 0.5}, {2.0, -1.0}, {4.0, -3.0}, {0.3, 0.75}};

// A2: every stored closed-form derivative matches finite differences.
void a2(Gate& g) {
  double worst = 0.0;
  int entries = 0;
  for (const ModelParams& p : kDerivPoints) {
    const FixedPoint fp = solve_self_consistency(p);
    const DerivPack dp = build_deriv_pack(p, fp.y_star);
    const long double a = p.a, b = p.b;
    const long double x = fp.x_star, y = fp.y_star;
    const long double ys = 1.0L / std::sqrt((long double)p.a);

    auto check = [&](const DerivMap& m, const oracle::Fn2& s) {
      for (const auto& [key, val] : m) {
        const long double want =
            oracle::mixed_partial(s, x, y, key.first, key.second, ys);
        const double scale = std::max(1.0, std::fabs((double)want));
        worst = std::max(worst, std::fabs(val - (double)want) / scale);
        ++entries;
      }
    };
    check(dp.f, [&](long double xx, long double yy) {
      return oracle::surface_f(a, b, xx, yy);
    });
    check(dp.g, [&](long double xx, long double yy) {
      return oracle::surface_g(a, b, xx, yy);
    });
    check(dp.gt, [&](long double xx, long double yy) {
      return oracle::surface_g_centered_sq(a, b, xx, yy, y);
    });
    check(dp.gh, [&](long double xx, long double yy) {
      return oracle::surface_g_bernoulli(a, b, xx, yy);
    });
  }
  g.report("A2", worst < 1e-6,
           fmt("derivative tables vs finite differences: %d entries at 5 "
               "points, max rel err %.2e (tol 1e-6)",
               entries, worst));
}

// A3: the closed-form moment table equals Gaussian moments under the saddle
// covariance, scaled back by the determinant power.
void a3(Gate& g) {
  double worst = 0.0;
  int entries = 0;
  bool count_ok = true;
  for (const ModelParams& p : kDerivPoints) {
    const FixedPoint fp = solve_self_consistency(p);
    const DerivPack dp = build_deriv_pack(p, fp.y_star);
    const MomentTable mt = build_moment_table(dp);
    const Cov2 cov{-deriv(dp.f, 0, 2) / dp.D, deriv(dp.f, 1, 1) / dp.D,
                   -deriv(dp.f, 2, 0) / dp.D};
    count_ok = count_ok && mt.gamma.size() == 24;
    for (const auto& [key, val] : mt.gamma) {
      const int order = key.first + key.second;
      const double want = std::pow(dp.D, order / 2.0) *
                          gaussian_moment(cov, key.first, key.second);
      const double scale = std::max(1.0, std::fabs(want));
      worst = std::max(worst, std::fabs(val - want) / scale);
      ++entries;
    }
  }
  g.report("A3", worst < 1e-8 && count_ok,
           fmt("moment table vs Gaussian-moment oracle: %d entries (24 per "
               "point), max rel err %.2e (tol 1e-8)",
               entries, worst));
}

// A4: the assembled susceptibility limit equals its closed form on a grid.
void a4(Gate& g) {
  double worst = 0.0;
  int used = 0, skipped = 0;
  for (double a : linspace(0.2, 4.0, 20))
    for (double b : linspace(-2.0, 1.0, 20)) {
      try {
        const ModelParams p{a, b};
        const CorrectionSet c = corrections(p);
        if (c.D < 0.05) {
          ++skipped;
          continue;
        }
        const double cf = chi_star_closed_form(p, c.m_star);
        worst = std::max(worst, std::fabs(c.chi_star - cf) /
                                    std::max(1.0, c.chi_star));
        ++used;
      } catch (const std::exception&) {
        ++skipped;
      }
    }
  g.report("A4", worst < 1e-10 && used > 300,
           fmt("susceptibility limit vs closed form: %d grid points (%d "
               "skipped near degeneracy), max scaled diff %.2e (tol 1e-10)",
               used, skipped, worst));
}

const ModelParams kExtrapPoints[] = {
    {1.0, 0.0}, {0.5, 0.5}, {2.0, -1.0}, {4.0, -3.0}};
const std::vector<std::int64_t> kSizes{256, 512, 1024, 2048, 4096};

struct A5Cache {
  std::vector<ExtrapolationResult> ex;
};

// A5: the three 1/N coefficients against exact-ensemble extrapolation.
void a5(Gate& g, A5Cache& cache) {
  double wp = 0.0, wm = 0.0, wc = 0.0;
  double smin = 1e300, smax = -1e300;
  for (const ModelParams& p : kExtrapPoints) {
    const ExtrapolationResult ex = correction_extrapolation(p, kSizes);
    const CorrectionSet c = corrections(p);
    wp = std::max(wp, std::fabs(ex.r_pressure.back() - c.lambda));
    wm = std::max(wm, std::fabs(ex.r_monomer.back() - c.lambda1));
    wc = std::max(wc, std::fabs(ex.r_susceptibility.back() - c.lambda2));
    for (double s : {ex.pressure.slope, ex.monomer.slope,
                     ex.susceptibility.slope}) {
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
    cache.ex.push_back(ex);
  }
  const bool slopes_ok = smin >= -1.3 && smax <= -0.7;
  g.report("A5", wp < 0.02 && wm < 0.02 && wc < 0.1 && slopes_ok,
           fmt("1/N coefficients vs exact-ensemble oracle at N=4096: "
               "max |dLambda|=%.2e (tol 0.02), |dLambda1|=%.2e (tol 0.02), "
               "|dLambda2|=%.2e (tol 0.1); residual decay slopes in "
               "[%.2f, %.2f] (need [-1.3, -0.7])",
               wp, wm, wc, smin, smax));
}

// A6: the per-order moment scaling is the one the exact ensemble selects;
// the flat scaling must fail the same check by a visible margin.
void a6(Gate& g, const A5Cache& cache) {
  double margins[2][4] = {};
  for (int s = 0; s < 2; ++s) {
    const MomentScaling scaling =
        s == 0 ? MomentScaling::per_order : MomentScaling::flat;
    for (int i = 0; i < 4; ++i) {
      const CorrectionSet c = corrections(kExtrapPoints[i], scaling);
      margins[s][i] =
          std::fabs(cache.ex[i].r_susceptibility.back() - c.lambda2);
    }
  }
  auto line = [&](int s) {
    return fmt("(1,0): %.2e  (0.5,0.5): %.2e  (2,-1): %.2e  (4,-3): %.2e",
               margins[s][0], margins[s][1], margins[s][2], margins[s][3]);
  };
  g.info("A6", "per-order scaling margins  " + line(0));
  g.info("A6", "flat scaling margins       " + line(1));
  const bool per_order_ok =
      *std::max_element(margins[0], margins[0] + 4) < 0.1;
  const bool flat_fails = *std::max_element(margins[1], margins[1] + 4) >= 0.1;
  g.report("A6", per_order_ok && flat_fails,
           fmt("moment-scaling adjudication: per-order passes the 0.1 "
               "second-correction check (max %.2e) and flat fails it "
               "(max %.2e)",
               *std::max_element(margins[0], margins[0] + 4),
               *std::max_element(margins[1], margins[1] + 4)));
}

// A7: determinant identity D = a (2 - y* - 2a y*(1 - y*)) at the maximizer.
void a7(Gate& g) {
  double worst = 0.0;
  for (double a : linspace(0.1, 2.8, 10))
    for (double b : linspace(-2.0, 1.0, 10)) {
      const ModelParams p{a, b};
      const FixedPoint fp = solve_self_consistency(p);
      const DerivPack dp = build_deriv_pack(p, fp.y_star);
      const double y = fp.y_star;
      const double psi = 2.0 - y - 2.0 * a * y * (1.0 - y);
      worst = std::max(worst, std::fabs(dp.D - a * psi));
    }
  g.report("A7", worst < 1e-12,
           fmt("determinant identity on a 100-point grid: max |D - a psi| "
               "= %.2e (tol 1e-12)",
               worst));
}

// A8: the pressure correction stays above its deep-field limit -log sqrt 2
// and reaches it as b -> -infinity.
void a8(Gate& g) {
  const double floor_val = -0.5 * std::log(2.0);
  double min_gap = 1e300;
  int used = 0;
  for (double a : linspace(0.2, 4.0, 20))
    for (double b : linspace(-2.0, 1.0, 20)) {
      try {
        const CorrectionSet c = corrections(ModelParams{a, b});
        if (c.D < 0.05) continue;
        min_gap = std::min(min_gap, c.lambda - floor_val);
        ++used;
      } catch (const std::exception&) {
      }
    }
  double worst_limit = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const CorrectionSet c = corrections(ModelParams{a, -30.0});
    worst_limit = std::max(worst_limit, std::fabs(c.lambda - floor_val));
  }
  g.report("A8", min_gap > 0.0 && used > 300 && worst_limit < 1e-6,
           fmt("pressure correction floor: min Lambda + log sqrt2 = %.2e > 0 "
               "on %d grid points; deep-field limit off by %.2e (tol 1e-6)",
               min_gap, used, worst_limit));
}

// A9: analytic and numeric sign-change curves overlap for every quantity.
void a9(Gate& g) {
  const std::vector<std::int64_t> sizes{256, 512, 1024};
  struct Block {
    Quantity q;
    std::vector<double> js;
    std::pair<double, double> bracket;
  };
  const Block blocks[] = {
      {Quantity::pressure, {0.6, 0.8, 1.0, 1.2, 1.4}, {-3.0, 1.5}},
      {Quantity::monomer, {0.6, 0.8, 1.0, 1.2, 1.4}, {-3.0, 1.5}},
      {Quantity::susceptibility, {0.5, 0.7, 0.9, 1.1, 1.3}, {-1.0, 0.0}},
  };
  bool ok = true;
  std::string detail = "analytic vs numeric curve per quantity, 5 couplings "
                       "each:";
  for (const Block& bl : blocks) {
    const CurveResult an = sign_change_curve(bl.q, bl.js, bl.bracket, 1e-6);
    const CurveResult nu =
        numeric_monotonicity_curve(bl.q, bl.js, bl.bracket, sizes, 1e-3);
    double worst = 0.0;
    if (an.points.size() != bl.js.size() ||
        nu.points.size() != bl.js.size()) {
      ok = false;
      detail += fmt(" %s: missing points (%zu/%zu)", to_string(bl.q),
                    an.points.size(), nu.points.size());
      continue;
    }
    for (std::size_t i = 0; i < bl.js.size(); ++i)
      worst = std::max(worst, std::fabs(an.points[i].h - nu.points[i].h));
    ok = ok && worst < 0.05;
    detail += fmt(" %s %.4f", to_string(bl.q), worst);
  }
  g.report("A9", ok, detail + " (tol 0.05)");
}

// A10: root counts and residuals across the single- and multi-root regimes.
void a10(Gate& g) {
  const double a_c = (3.0 + 2.0 * std::sqrt(2.0)) / 2.0;
  const double bs[] = {-2.0, -1.0, -0.3, 0.0, 0.5, 1.0};
  double worst_res = 0.0;
  bool counts_ok = true;
  for (int i = 0; i < 50; ++i) {
    const ModelParams p{a_c * (i + 1) / 50.0, bs[i % 6]};
    const FixedPoint fp = solve_self_consistency(p);
    counts_ok = counts_ok && fp.roots.size() == 1;
    for (double y : fp.roots)
      worst_res =
          std::max(worst_res, std::fabs(self_consistency_residual(p, y)));
  }
  const ModelParams multi{4.0, -2.4};
  const FixedPoint fp = solve_self_consistency(multi);
  counts_ok = counts_ok && fp.roots.size() == 3;
  for (double y : fp.roots)
    worst_res =
        std::max(worst_res, std::fabs(self_consistency_residual(multi, y)));
  g.report("A10", counts_ok && worst_res < 1e-12,
           fmt("consistency-equation root counts (1 below the critical "
               "coupling, 3 at a=4, b=-2.4) with max residual %.2e "
               "(tol 1e-12)",
               worst_res));
}

}  // namespace

int main() {
  Gate g;
  A5Cache cache;
  struct Step {
    const char* id;
    std::function<void()> run;
  };
  const Step steps[] = {
      {"A1", [&] { a1(g); }},   {"A2", [&] { a2(g); }},
      {"A3", [&] { a3(g); }},   {"A4", [&] { a4(g); }},
      {"A5", [&] { a5(g, cache); }},
      {"A6", [&] { a6(g, cache); }},
      {"A7", [&] { a7(g); }},   {"A8", [&] { a8(g); }},
      {"A9", [&] { a9(g); }},   {"A10", [&] { a10(g); }},
  };
  for (const Step& s : steps) {
    try {
      s.run();
    } catch (const std::exception& e) {
      g.report(s.id, false, std::string("unexpected exception: ") + e.what());
    }
  }
  std::printf("%s\n", g.all_pass ? "acceptance: all criteria satisfied"
                                 : "acceptance: FAILURES above");
  return g.all_pass ? 0 : 1;
}
