// Serial vs OpenMP kernels: LGV matrix assembly and arctic-curve sampling.
#include <benchmark/benchmark.h>

#include "aztec/asymptotics.hpp"
#include "aztec/lgv.hpp"
#include "aztec/profile.hpp"

using namespace aztec;

namespace {

Weights bench_weights() {
  Weights w;
  w.gamma = Rational(3) / 2;
  w.q = Rational(9) / 10;
  return w;
}

void BM_gv_matrix_serial(benchmark::State& state) {
  const StartConfig cfg = aztec_diamond_config(static_cast<int>(state.range(0)));
  const Weights w = bench_weights();
  for (auto _ : state) {
    auto a = build_gv_matrix_serial(cfg, w);
    benchmark::DoNotOptimize(a);
  }
}

void BM_gv_matrix_parallel(benchmark::State& state) {
  const StartConfig cfg = aztec_diamond_config(static_cast<int>(state.range(0)));
  const Weights w = bench_weights();
  for (auto _ : state) {
    auto a = build_gv_matrix(cfg, w);
    benchmark::DoNotOptimize(a);
  }
}

void BM_arctic_curve_serial(benchmark::State& state) {
  const MomentX mx(profile_two_runs(), AsymParams::at(1.3, 1.2));
  for (auto _ : state) {
    auto pts = arctic_curve_serial(mx, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(pts);
  }
}

void BM_arctic_curve_parallel(benchmark::State& state) {
  const MomentX mx(profile_two_runs(), AsymParams::at(1.3, 1.2));
  for (auto _ : state) {
    auto pts = arctic_curve(mx, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(pts);
  }
}

}  // namespace

BENCHMARK(BM_gv_matrix_serial)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gv_matrix_parallel)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_arctic_curve_serial)
    ->Arg(2000)
    ->Arg(20000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_arctic_curve_parallel)
    ->Arg(2000)
    ->Arg(20000)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
