#include "mdfs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "mdfs/errors.hpp"
#include "mdfs/fixed_point.hpp"

namespace mdfs {

namespace {

struct GlRule {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n from Chebyshev
// starting points; deterministic and accurate to machine precision.
GlRule gl_rule(int n) {
  GlRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

const GlRule& gl15() {
  static const GlRule r = gl_rule(15);
  return r;
}
const GlRule& gl7() {
  static const GlRule r = gl_rule(7);
  return r;
}
const GlRule& gl72() {
  static const GlRule r = gl_rule(72);
  return r;
}

// Phi(x,y)^n, signed: Phi < 0 to the left of the x + e^{ay+b} = 0 line.
double phi_pow(double a, double b, int n, double x, double y) {
  const double t = x + std::exp(a * y + b);
  if (t == 0.0) return 0.0;
  const double lg =
      n * (std::log(std::abs(t)) - 0.5 * x * x - 0.5 * a * y * y);
  const double v = std::exp(lg);
  return (t < 0.0 && (n & 1)) ? -v : v;
}

struct Cell {
  double x0, x1, y0, y1;
  double v;  // 15x15 tensor value
  double e;  // |15x15 - 7x7| rule error estimate
};

Cell eval_cell(double a, double b, int n, double x0, double x1, double y0,
               double y1, std::int64_t& evals) {
  const GlRule& r15 = gl15();
  const GlRule& r7 = gl7();
  const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
  const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);

  long double s15 = 0.0L;
  for (int i = 0; i < 15; ++i) {
    const double x = cx + hx * r15.x[i];
    long double row = 0.0L;
    for (int j = 0; j < 15; ++j)
      row += r15.w[j] * phi_pow(a, b, n, x, cy + hy * r15.x[j]);
    s15 += r15.w[i] * row;
  }
  long double s7 = 0.0L;
  for (int i = 0; i < 7; ++i) {
    const double x = cx + hx * r7.x[i];
    long double row = 0.0L;
    for (int j = 0; j < 7; ++j)
      row += r7.w[j] * phi_pow(a, b, n, x, cy + hy * r7.x[j]);
    s7 += r7.w[i] * row;
  }
  evals += 225 + 49;
  const double area = hx * hy;
  const double v = double(s15) * area;
  return Cell{x0, x1, y0, y1, v, std::abs(v - double(s7) * area)};
}

struct Rect {
  double x0, x1, y0, y1;
};

// Largest value of log|Phi| along x at fixed y, for the positive lobe
// (right of the zero line) or the negative one.
double lobe_log_max(double a, double b, double y, int lobe) {
  const double e = std::exp(a * y + b);
  const double s = std::hypot(e, 2.0);  // sqrt(e^2 + 4)
  const double xh = (lobe > 0) ? 0.5 * (s - e) : -0.5 * (s + e);
  const double t = std::abs(xh + e);  // (s + e)/2 resp. (s - e)/2
  return std::log(t) - 0.5 * xh * xh - 0.5 * a * y * y;
}

// Snug rectangle: scan y away from the maximizer while either lobe of the
// integrand stays within e^{-T} of the peak (per point), and collect the
// x extents of every lobe that is still alive. Keying the x range to live
// lobes only is what keeps the rectangle/peak width ratio bounded, so the
// initial coarse grid can never hide the peak from the error estimator.
Rect choose_rect(const ModelParams& p, int n, double p_star, double y_star) {
  const double T = 46.0;  // e^-46 ~ 1e-20 relative tail
  const double thr = p_star - T / n;
  const double dxpad = std::sqrt(2.0 * T / n) + 0.25;
  const double dy =
      std::max(1e-3, (1.0 + std::sqrt(2.0 * T / (p.a * n))) / 400.0);

  double xlo = std::numeric_limits<double>::infinity();
  double xhi = -xlo;
  auto absorb = [&](double y) {
    bool alive = false;
    for (int lobe : {+1, -1}) {
      if (lobe_log_max(p.a, p.b, y, lobe) < thr) continue;
      alive = true;
      const double e = std::exp(p.a * y + p.b);
      const double s = std::hypot(e, 2.0);
      const double xh = (lobe > 0) ? 0.5 * (s - e) : -0.5 * (s + e);
      xlo = std::min(xlo, xh - dxpad);
      xhi = std::max(xhi, xh + dxpad);
    }
    return alive;
  };

  absorb(y_star);
  double ylo = y_star, yhi = y_star;
  int dead = 0;
  for (double y = y_star + dy; y < y_star + 30.0 && dead < 3; y += dy)
    if (absorb(y)) {
      yhi = y;
      dead = 0;
    } else {
      ++dead;
    }
  dead = 0;
  for (double y = y_star - dy; y > y_star - 30.0 && dead < 3; y -= dy)
    if (absorb(y)) {
      ylo = y;
      dead = 0;
    } else {
      ++dead;
    }
  return Rect{xlo, xhi, ylo - 2.0 * dy, yhi + 2.0 * dy};
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

void check_cov(const Cov2& c) {
  if (!(c.xx > 0.0) || !(c.yy > 0.0) ||
      !(c.xx * c.yy - c.xy * c.xy > 0.0))
    throw std::domain_error("gaussian moment: covariance not positive definite");
}

}  // namespace

QuadratureResult integral_partition(const ModelParams& p, int n,
                                    double rel_tol, double rect_scale) {
  if (!(p.a > 0.0))
    throw std::domain_error("integral_partition: requires a > 0");
  if (n < 1 || n > 64)
    throw std::domain_error("integral_partition: requires 1 <= n <= 64");
  if (!(rel_tol > 0.0) || !(rect_scale > 0.0))
    throw std::domain_error("integral_partition: bad tolerance or scale");

  const FixedPoint fp = solve_self_consistency(p);
  Rect rc = choose_rect(p, n, fp.p_star, fp.y_star);
  {
    const double cx = 0.5 * (rc.x0 + rc.x1), cy = 0.5 * (rc.y0 + rc.y1);
    rc.x0 = cx + rect_scale * (rc.x0 - cx);
    rc.x1 = cx + rect_scale * (rc.x1 - cx);
    rc.y0 = cy + rect_scale * (rc.y0 - cy);
    rc.y1 = cy + rect_scale * (rc.y1 - cy);
  }

  std::int64_t evals = 0;
  std::vector<Cell> cells;
  std::vector<char> live;
  std::priority_queue<std::pair<double, std::size_t>> pq;
  long double tot_v = 0.0L, tot_e = 0.0L;

  auto add_cell = [&](double x0, double x1, double y0, double y1) {
    cells.push_back(eval_cell(p.a, p.b, n, x0, x1, y0, y1, evals));
    live.push_back(1);
    tot_v += cells.back().v;
    tot_e += cells.back().e;
    pq.emplace(cells.back().e, cells.size() - 1);
  };

  const int grid = 8;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      add_cell(rc.x0 + (rc.x1 - rc.x0) * i / grid,
               rc.x0 + (rc.x1 - rc.x0) * (i + 1) / grid,
               rc.y0 + (rc.y1 - rc.y0) * j / grid,
               rc.y0 + (rc.y1 - rc.y0) * (j + 1) / grid);

  const int max_splits = 20000;
  int splits = 0;
  while (double(tot_e) > rel_tol * std::abs(double(tot_v))) {
    if (pq.empty() || splits >= max_splits)
      throw ConvergenceError("integral_partition: refinement stalled");
    const auto [err, idx] = pq.top();
    pq.pop();
    if (!live[idx]) continue;
    const Cell c = cells[idx];
    live[idx] = 0;
    tot_v -= c.v;
    tot_e -= c.e;
    const double mx = 0.5 * (c.x0 + c.x1), my = 0.5 * (c.y0 + c.y1);
    add_cell(c.x0, mx, c.y0, my);
    add_cell(mx, c.x1, c.y0, my);
    add_cell(c.x0, mx, my, c.y1);
    add_cell(mx, c.x1, my, c.y1);
    ++splits;
  }

  // Deterministic final sum over leaves in a fixed geometric order.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (live[i]) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a_, std::size_t b_) {
    if (cells[a_].x0 != cells[b_].x0) return cells[a_].x0 < cells[b_].x0;
    if (cells[a_].y0 != cells[b_].y0) return cells[a_].y0 < cells[b_].y0;
    return a_ < b_;
  });
  long double v_sum = 0.0L, e_sum = 0.0L;
  for (std::size_t i : order) {
    v_sum += cells[i].v;
    e_sum += cells[i].e;
  }

  // Truncation bound: peak boundary magnitude times perimeter times the
  // 1/sqrt(n) decay length; far below the rule error by construction.
  double bmax = -std::numeric_limits<double>::infinity();
  const int bs = 64;
  for (int i = 0; i <= bs; ++i) {
    const double fx = rc.x0 + (rc.x1 - rc.x0) * i / bs;
    const double fy = rc.y0 + (rc.y1 - rc.y0) * i / bs;
    for (double v : {n * (std::log(std::abs(fx + std::exp(p.a * rc.y0 + p.b)) +
                                   1e-300) -
                          0.5 * fx * fx - 0.5 * p.a * rc.y0 * rc.y0),
                     n * (std::log(std::abs(fx + std::exp(p.a * rc.y1 + p.b)) +
                                   1e-300) -
                          0.5 * fx * fx - 0.5 * p.a * rc.y1 * rc.y1),
                     n * (std::log(std::abs(rc.x0 + std::exp(p.a * fy + p.b)) +
                                   1e-300) -
                          0.5 * rc.x0 * rc.x0 - 0.5 * p.a * fy * fy),
                     n * (std::log(std::abs(rc.x1 + std::exp(p.a * fy + p.b)) +
                                   1e-300) -
                          0.5 * rc.x1 * rc.x1 - 0.5 * p.a * fy * fy)})
      bmax = std::max(bmax, v);
  }
  const double perim = 2.0 * (rc.x1 - rc.x0) + 2.0 * (rc.y1 - rc.y0);
  const double tail = std::exp(bmax) * perim / std::sqrt(double(n));

  const double prefactor = n * std::sqrt(p.a) / (2.0 * M_PI);
  QuadratureResult q;
  q.value = prefactor * double(v_sum);
  q.est_error = prefactor * (double(e_sum) + tail);
  q.evaluations = evals;
  return q;
}

double gaussian_moment(const Cov2& cov, int i, int j) {
  if (i < 0 || j < 0)
    throw std::domain_error("gaussian_moment: negative order");
  check_cov(cov);
  if ((i + j) % 2 != 0) return 0.0;
  std::vector<std::vector<double>> m(i + 1, std::vector<double>(j + 1, 0.0));
  m[0][0] = 1.0;
  for (int q = 2; q <= j; ++q) m[0][q] = (q - 1) * cov.yy * m[0][q - 2];
  for (int p_ = 1; p_ <= i; ++p_)
    for (int q = 0; q <= j; ++q) {
      double v = 0.0;
      if (p_ >= 2) v += (p_ - 1) * cov.xx * m[p_ - 2][q];
      if (q >= 1) v += q * cov.xy * m[p_ - 1][q - 1];
      m[p_][q] = v;
    }
  return m[i][j];
}

double gaussian_moment_quadrature(const Cov2& cov, int i, int j) {
  if (i < 0 || j < 0)
    throw std::domain_error("gaussian_moment_quadrature: negative order");
  check_cov(cov);
  const double l11 = std::sqrt(cov.xx);
  const double l21 = cov.xy / l11;
  const double l22 = std::sqrt(cov.yy - l21 * l21);

  const GlRule& r = gl72();
  const double half = 9.5;  // standardized cutoff; tail ~ e^-45
  long double s = 0.0L;
  for (std::size_t iu = 0; iu < r.x.size(); ++iu) {
    const double u = half * r.x[iu];
    const double x = l11 * u;
    long double row = 0.0L;
    for (std::size_t iv = 0; iv < r.x.size(); ++iv) {
      const double v = half * r.x[iv];
      const double y = l21 * u + l22 * v;
      row += r.w[iv] * ipow(x, i) * ipow(y, j) *
             std::exp(-0.5 * (u * u + v * v));
    }
    s += r.w[iu] * row;
  }
  return double(s) * half * half / (2.0 * M_PI);
}

}  // namespace mdfs
