#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "sdwave/radial.hpp"
#include "sdwave/symbol.hpp"

namespace {

using namespace sdwave;

// Radii straddle the double root at r = 2^{1/3} so every branch is timed.
std::vector<double> log_radii(std::size_t count) {
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = 1e-3 * std::pow(1e6, (i + 0.5) / count);
  return r;
}

void BM_Propagator(benchmark::State& state) {
  const auto radii = log_radii(1024);
  for (auto _ : state) {
    for (double r : radii) benchmark::DoNotOptimize(propagator(1.0, 3.7, r));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(radii.size()));
}
BENCHMARK(BM_Propagator);

void BM_DuhamelWeights(benchmark::State& state) {
  const auto radii = log_radii(1024);
  for (auto _ : state) {
    for (double r : radii) benchmark::DoNotOptimize(duhamel_weights(1.0, 0.05, r));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(radii.size()));
}
BENCHMARK(BM_DuhamelWeights);

// One Plancherel norm evaluation at late time on the oscillation-resolving
// quadrature of a long linear run.
void BM_RadialNorm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  QuadratureOptions opt;
  opt.oscillation_t_max = 1e4;
  auto quad = std::make_shared<const RadialQuadrature>(RadialQuadrature::build(dim, opt));
  const auto spec = evolve_linear(1.0, initial_spectrum(quad, RadialProfile::gaussian(1.0, 1.0),
                                                        RadialProfile::gaussian(1.0, 1.0)), 1e3);
  for (auto _ : state) benchmark::DoNotOptimize(l2_norm(spec, Field::u, 0.0));
  state.counters["nodes"] = static_cast<double>(quad->size());
}
BENCHMARK(BM_RadialNorm)->Arg(2)->Arg(3)->Arg(5);

void BM_EvolveLinear(benchmark::State& state) {
  QuadratureOptions opt;
  opt.oscillation_t_max = 1e4;
  auto quad = std::make_shared<const RadialQuadrature>(RadialQuadrature::build(3, opt));
  const auto spec = initial_spectrum(quad, RadialProfile::gaussian(1.0, 1.0), RadialProfile::zero());
  for (auto _ : state) benchmark::DoNotOptimize(evolve_linear(1.0, spec, 1e3));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(quad->size()));
}
BENCHMARK(BM_EvolveLinear);

}  // namespace
