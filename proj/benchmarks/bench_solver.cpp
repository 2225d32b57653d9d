#include <benchmark/benchmark.h>

#include <vector>

#include "sdwave/grid.hpp"
#include "sdwave/pseudospectral.hpp"

namespace {

using namespace sdwave;

PseudospectralSolver make_solver(int dim, int points, int j, double p) {
  NonlinearitySpec nl;
  nl.j = j;
  nl.p = p;
  nl.a.assign(static_cast<std::size_t>(dim), 0.0);
  nl.a[0] = 1.0;
  StepperConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 1.0;
  cfg.output_interval = 1.0;
  return PseudospectralSolver(PeriodicGrid(dim, points, 50.0), 1.0, nl, cfg);
}

void BM_FftRoundTrip(benchmark::State& state) {
  const PeriodicGrid grid(2, static_cast<int>(state.range(0)), 50.0);
  SpectralTransform fft(grid);
  std::vector<double> phys(grid.physical_size(), 1.0);
  std::vector<cplx> spec(grid.spectral_size());
  for (auto _ : state) {
    fft.forward(phys, spec);
    fft.inverse(spec, phys);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_FftRoundTrip)->Arg(128)->Arg(256)->Arg(512);

void BM_LinearStep(benchmark::State& state) {
  auto solver = make_solver(2, static_cast<int>(state.range(0)), 0, 6.0);
  const auto st = solver.initial_state(RadialProfile::gaussian(1e-3, 1.0), RadialProfile::zero());
  for (auto _ : state) benchmark::DoNotOptimize(solver.linear_step(st, 0.37));
}
BENCHMARK(BM_LinearStep)->Arg(128)->Arg(512);

void BM_NonlinearRhs(benchmark::State& state) {
  auto solver = make_solver(2, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 2.5);
  const auto st = solver.initial_state(RadialProfile::gaussian(1e-3, 1.0), RadialProfile::gaussian(1e-3, 1.0));
  std::vector<cplx> out;
  for (auto _ : state) benchmark::DoNotOptimize(solver.nonlinear_rhs(st, out));
}
BENCHMARK(BM_NonlinearRhs)->Args({128, 0})->Args({512, 0})->Args({512, 1});

void BM_Etd2Step(benchmark::State& state) {
  auto solver = make_solver(2, static_cast<int>(state.range(0)), 0, 6.0);
  auto st = solver.initial_state(RadialProfile::gaussian(1e-3, 1.0), RadialProfile::zero());
  for (auto _ : state) benchmark::DoNotOptimize(solver.etd_step(st));
}
BENCHMARK(BM_Etd2Step)->Arg(128)->Arg(512);

}  // namespace
