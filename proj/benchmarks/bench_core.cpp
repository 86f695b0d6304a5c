#include <benchmark/benchmark.h>

#include <vector>

#include "mdfs/derivatives.hpp"
#include "mdfs/exact.hpp"
#include "mdfs/fixed_point.hpp"
#include "mdfs/laplace.hpp"
#include "mdfs/quadrature.hpp"

namespace {

const mdfs::ModelParams kPoint{1.0, 0.0};

void BM_solve_self_consistency(benchmark::State& state) {
  for (auto _ : state) {
    auto fp = mdfs::solve_self_consistency(kPoint);
    benchmark::DoNotOptimize(fp.y_star);
  }
}
BENCHMARK(BM_solve_self_consistency);

void BM_corrections(benchmark::State& state) {
  for (auto _ : state) {
    auto c = mdfs::corrections(kPoint);
    benchmark::DoNotOptimize(c.lambda2);
  }
}
BENCHMARK(BM_corrections);

void BM_moment_table(benchmark::State& state) {
  const auto fp = mdfs::solve_self_consistency(kPoint);
  const auto dp = mdfs::build_deriv_pack(kPoint, fp.y_star);
  for (auto _ : state) {
    auto mt = mdfs::build_moment_table(dp);
    benchmark::DoNotOptimize(mt.gamma.size());
  }
}
BENCHMARK(BM_moment_table);

void BM_observables(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto o = mdfs::observables(kPoint, n);
    benchmark::DoNotOptimize(o.susceptibility);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_observables)->Arg(256)->Arg(1024)->Arg(4096)->Arg(16384)
    ->Complexity(benchmark::oN);

void BM_log_matching_count(benchmark::State& state) {
  std::int64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mdfs::log_matching_count(4096, 1024 + (k & 63)));
    ++k;
  }
}
BENCHMARK(BM_log_matching_count);

void BM_integral_partition(benchmark::State& state) {
  for (auto _ : state) {
    auto q = mdfs::integral_partition(kPoint, 8);
    benchmark::DoNotOptimize(q.value);
  }
}
BENCHMARK(BM_integral_partition);

}  // namespace

BENCHMARK_MAIN();
