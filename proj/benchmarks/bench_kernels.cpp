#include <benchmark/benchmark.h>

#include <cmath>

#include "amlab/convolution.hpp"
#include "amlab/decompose.hpp"
#include "amlab/diff.hpp"
#include "amlab/reduce.hpp"
#include "amlab/scenario.hpp"

using namespace amlab;

namespace {

ScalarField gaussian(const Grid3& g) {
  ScalarField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.node(i);
    f(0, i) = std::exp(-0.5 * dot(x, x));
  }
  return f;
}

Grid3 box(const benchmark::State& state) { return Grid3::cube(static_cast<int>(state.range(0)), 8.0); }

void BM_Convolution(benchmark::State& state) {
  const ScalarField f = gaussian(box(state));
  free_space_convolution(f, Kernel::inverse_distance);  // warm the kernel cache
  for (auto _ : state) benchmark::DoNotOptimize(free_space_convolution(f, Kernel::inverse_distance));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid().size()));
}

void BM_Gradient(benchmark::State& state) {
  const Scheme scheme = state.range(1) ? Scheme::spectral : Scheme::fd4;
  const ScalarField f = gaussian(box(state));
  for (auto _ : state) benchmark::DoNotOptimize(gradient(f, scheme));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid().size()));
}

void BM_Integrate(benchmark::State& state) {
  const ScalarField f = gaussian(box(state));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid().size()));
}

void BM_Decompose(benchmark::State& state) {
  const Grid3 g = box(state);
  PhysicalParams p;
  p.e = -1.0;
  ScenarioSpec spec;
  spec.name = "gaussian-spin-up";
  const SpinorField psi = scenario(spec, g, p);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(psi, p, SelfField{}));
}

}  // namespace

BENCHMARK(BM_Convolution)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient)->ArgsProduct({{32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Integrate)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Decompose)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
