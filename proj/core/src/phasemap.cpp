#include "mdfs/phasemap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mdfs/exact.hpp"
#include "mdfs/laplace.hpp"
#include "mdfs/model.hpp"

namespace mdfs {

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::pressure: return "pressure";
    case Quantity::monomer: return "monomer";
    case Quantity::susceptibility: return "susceptibility";
  }
  return "?";
}

const char* to_string(CurveMethod m) {
  return m == CurveMethod::analytic ? "analytic" : "numeric";
}

double correction_value(const CorrectionSet& c, Quantity q) {
  switch (q) {
    case Quantity::pressure: return c.lambda;
    case Quantity::monomer: return c.lambda1;
    case Quantity::susceptibility: return c.lambda2;
  }
  throw std::logic_error("correction_value: bad quantity");
}

double observable_value(const ExactObservables& o, Quantity q) {
  switch (q) {
    case Quantity::pressure: return o.pressure;
    case Quantity::monomer: return o.monomer_mean;
    case Quantity::susceptibility: return o.susceptibility;
  }
  throw std::logic_error("observable_value: bad quantity");
}

namespace {

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// One sign probe of the traced function at (j, h). `consensus` is the
// agreed sign (0 when undecided), `steer` a best-effort fallback used only
// to keep a bisection moving through an undecided sliver.
struct Probe {
  bool valid = false;
  int consensus = 0;
  int steer = 0;
};

struct AnalyticSign {
  Quantity q;
  Probe operator()(double j, double h) const {
    Probe pr;
    try {
      const CorrectionSet c = corrections(from_jh(j, h));
      pr.valid = true;
      pr.consensus = pr.steer = sgn(correction_value(c, q));
    } catch (const std::exception&) {
    }
    return pr;
  }
};

// Finite-size estimator: with q_n = q* + c/n + ..., consecutive sizes give
// q_{n2} - q_{n1} = c (1/n2 - 1/n1), so each pair votes -sgn(q_{n2}-q_{n1})
// for the sign of c. `consensus` requires unanimity; `steer` is the vote of
// the largest pair, which has the smallest O(1/n^2) contamination.
struct NumericSign {
  Quantity q;
  std::span<const std::int64_t> sizes;
  Probe operator()(double j, double h) const {
    Probe pr;
    try {
      const ModelParams p = from_jh(j, h);
      std::vector<double> vals;
      vals.reserve(sizes.size());
      for (std::int64_t n : sizes)
        vals.push_back(observable_value(observables(p, n), q));
      int cons = 2;
      for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
        const int s = -sgn(vals[k + 1] - vals[k]);
        pr.steer = s;
        if (cons == 2)
          cons = s;
        else if (cons != s)
          cons = 0;
      }
      pr.valid = true;
      pr.consensus = (cons == 2) ? 0 : cons;
      if (pr.consensus == 0 && pr.steer == 0) pr.valid = vals.size() >= 2;
    } catch (const std::exception&) {
    }
    return pr;
  }
};

struct TraceOutcome {
  std::optional<CurvePoint> point;
  std::vector<std::string> notes;
};

std::string jtag(double j) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "j=%.6g", j);
  return buf;
}

template <typename SignFn>
TraceOutcome trace_one(Quantity q, CurveMethod method, double j,
                       std::pair<double, double> h_bracket, double tol,
                       double verify_off, const SignFn& sign_at) {
  TraceOutcome out;
  const double hlo = h_bracket.first, hhi = h_bracket.second;

  // Coarse scan; keep only decided samples and bracket the first flip.
  const int scan = 64;
  std::vector<std::pair<double, int>> decided;
  for (int i = 0; i <= scan; ++i) {
    const double h = hlo + (hhi - hlo) * i / scan;
    const Probe pr = sign_at(j, h);
    if (pr.valid && pr.consensus != 0) decided.emplace_back(h, pr.consensus);
  }
  if (decided.empty()) {
    out.notes.push_back(jtag(j) + ": no usable samples in bracket");
    return out;
  }
  double lo = 0.0, hi = 0.0;
  int slo = 0;
  bool found = false;
  for (std::size_t k = 0; k + 1 < decided.size(); ++k)
    if (decided[k].second * decided[k + 1].second < 0) {
      lo = decided[k].first;
      hi = decided[k + 1].first;
      slo = decided[k].second;
      found = true;
      break;
    }
  if (!found) {
    out.notes.push_back(jtag(j) + ": no sign change in bracket");
    return out;
  }

  while (hi - lo > tol) {
    const double w = hi - lo;
    double hm = 0.0;
    int sm = 0;
    int steer = 0;
    for (double f : {0.5, 0.382, 0.618}) {
      const double hc = lo + f * w;
      const Probe pr = sign_at(j, hc);
      if (f == 0.5 && pr.valid) steer = pr.steer;
      if (pr.valid && pr.consensus != 0) {
        hm = hc;
        sm = pr.consensus;
        break;
      }
    }
    if (sm == 0 && steer != 0) {
      hm = lo + 0.5 * w;
      sm = steer;
    }
    if (sm == 0) {
      out.notes.push_back(jtag(j) + ": bisection lost the sign");
      return out;
    }
    if (sm == slo)
      lo = hm;
    else
      hi = hm;
  }

  const double root = 0.5 * (lo + hi);
  const Probe below = sign_at(j, std::max(hlo, root - verify_off));
  const Probe above = sign_at(j, std::min(hhi, root + verify_off));
  if (!(below.valid && above.valid && below.consensus == slo &&
        above.consensus == -slo))
    out.notes.push_back(jtag(j) + ": sign pattern off the root not confirmed");

  out.point = CurvePoint{j, root, q, method, hi - lo};
  return out;
}

int resolve_threads(int requested, std::size_t jobs) {
  int t = requested;
  if (t <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    t = hw > 0 ? int(hw) : 1;
  }
  if (const char* env = std::getenv("MDFS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) t = std::min(t, cap);
  }
  t = std::min<long long>(t, std::max<std::size_t>(jobs, 1));
  return std::max(t, 1);
}

template <typename SignFn>
CurveResult run_trace(Quantity q, CurveMethod method,
                      std::span<const double> j_grid,
                      std::pair<double, double> h_bracket, double tol,
                      double verify_off, int threads, const SignFn& sign_at) {
  if (!(h_bracket.first < h_bracket.second))
    throw std::domain_error("curve trace: empty h bracket");
  if (!(tol > 0.0)) throw std::domain_error("curve trace: tol must be > 0");
  for (double j : j_grid)
    if (!(j > 0.0)) throw std::domain_error("curve trace: requires j > 0");

  std::vector<TraceOutcome> slots(j_grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= j_grid.size()) return;
      try {
        slots[i] =
            trace_one(q, method, j_grid[i], h_bracket, tol, verify_off,
                      sign_at);
      } catch (const std::exception& e) {
        slots[i].notes.push_back(jtag(j_grid[i]) + ": " + e.what());
      }
    }
  };

  const int nt = resolve_threads(threads, j_grid.size());
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CurveResult res;
  for (auto& s : slots) {
    if (s.point) res.points.push_back(*s.point);
    for (auto& n : s.notes) res.notes.push_back(std::move(n));
  }
  return res;
}

}  // namespace

CurveResult sign_change_curve(Quantity q, std::span<const double> j_grid,
                              std::pair<double, double> h_bracket, double tol,
                              int threads) {
  return run_trace(q, CurveMethod::analytic, j_grid, h_bracket, tol,
                   2.0 * tol, threads, AnalyticSign{q});
}

CurveResult numeric_monotonicity_curve(Quantity q,
                                       std::span<const double> j_grid,
                                       std::pair<double, double> h_bracket,
                                       std::span<const std::int64_t> n_list,
                                       double tol, int threads) {
  if (n_list.size() < 3)
    throw std::domain_error("numeric curve: need at least three sizes");
  for (std::size_t k = 0; k + 1 < n_list.size(); ++k)
    if (!(n_list[k] >= 1 && n_list[k] < n_list[k + 1]))
      throw std::domain_error("numeric curve: sizes must increase");
  return run_trace(q, CurveMethod::numeric, j_grid, h_bracket, tol,
                   std::max(4.0 * tol, 0.02), threads,
                   NumericSign{q, n_list});
}

}  // namespace mdfs
