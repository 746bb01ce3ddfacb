// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "pointbeam/eigenfunctions.hpp"
#include "pointbeam/resolvent.hpp"
#include "pointbeam/spectrum.hpp"

using namespace pointbeam;

namespace {

const BeamParams kParams = make_params(1, 1, 0.05, 0, 1.0 / std::sqrt(2.0));

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_Spectrum(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(compute_spectrum(kParams, 32, exec_of(st)));
}

void BM_TrackAlpha(benchmark::State& st) {
  const auto p0 = make_params(1, 1, 0, 0, kParams.xi);
  for (auto _ : st) benchmark::DoNotOptimize(track_alpha(p0, 0.1, 10, 8, exec_of(st)));
}

void BM_Convolution(benchmark::State& st) {
  const auto f = GridFunction::sample(1024, [](double x) { return cplx(std::sin(pi * x), x); });
  const cplx l(6, 2);
  for (auto _ : st) {
    if (st.range(0))
      benchmark::DoNotOptimize(convolve_u0_grid(l, f, 1, 0, Exec::parallel));
    else
      benchmark::DoNotOptimize(convolve_u0_grid_reference(l, f, 1, 0));
  }
}

void BM_Riesz(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(riesz_tail_report(kParams, 4, 16, 512, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_Spectrum)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrackAlpha)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Convolution)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Riesz)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
