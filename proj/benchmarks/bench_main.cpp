#include <benchmark/benchmark.h>

#include "fracfront/kernel.hpp"
#include "fracfront/simulate.hpp"
#include "fracfront/specfun.hpp"

namespace ff = fracfront;

static void BM_MittagLefflerSeries(benchmark::State& state) {
  double z = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ff::mittag_leffler(0.4, z));
    z = z < -4.0 ? -1.0 : z - 0.01;
  }
}
BENCHMARK(BM_MittagLefflerSeries);

static void BM_MittagLefflerLargeArgument(benchmark::State& state) {
  double z = -20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ff::mittag_leffler(0.4, z));
    z = z < -200.0 ? -20.0 : z - 0.5;
  }
}
BENCHMARK(BM_MittagLefflerLargeArgument);

static void BM_StablePdf(benchmark::State& state) {
  const double beta = static_cast<double>(state.range(0)) / 10.0;
  double w = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ff::stable_pdf(beta, w));
    w = w > 10.0 ? 0.1 : w * 1.1;
  }
}
BENCHMARK(BM_StablePdf)->Arg(3)->Arg(7);

static void BM_KernelGridFourier(benchmark::State& state) {
  const auto p = ff::ModelParams::linear(0.4, static_cast<int>(state.range(0)), 1.0);
  const auto grid = ff::recommended_lattice(p, 1.0, state.range(0) == 1 ? 0.05 : 0.1);
  ff::FourierOptions fo;
  fo.view = ff::FourierView::Pointwise;
  for (auto _ : state) benchmark::DoNotOptimize(ff::kernel_grid_fourier(p, 1.0, grid, fo).values.data());
  state.counters["sites"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_KernelGridFourier)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SolveReplicate(benchmark::State& state) {
  ff::SimConfig c;
  c.params = ff::ModelParams::linear(0.4, 1, 2.0);
  c.grid = {1, static_cast<std::size_t>(state.range(0)), 0.125};
  c.dt = 0.02;
  c.horizon = 2.0;
  c.threads = 1;
  const auto cache = ff::build_kernel_cache(c);
  std::size_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ff::solve_replicate(c, rep++, cache).fields.data());
}
BENCHMARK(BM_SolveReplicate)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
