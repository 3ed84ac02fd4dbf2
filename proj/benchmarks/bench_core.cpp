#include <benchmark/benchmark.h>

#include "rfl/bessel.hpp"
#include "rfl/corpus.hpp"
#include "rfl/hankel.hpp"
#include "rfl/maximizer.hpp"
#include "rfl/riesz_direct.hpp"

namespace {

void BM_BesselJ(benchmark::State& state) {
  const double nu = 1.5;
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfl::bessel_j(nu, x));
    x = x < 500.0 ? x * 1.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ);

void BM_TransformBuild(benchmark::State& state) {
  const auto g = rfl::RadialGrid::standard(5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    rfl::HankelTransform t(g);
    benchmark::DoNotOptimize(t.entry(0, 0));
  }
}
BENCHMARK(BM_TransformBuild)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_TransformApply(benchmark::State& state) {
  const auto g = rfl::RadialGrid::standard(5, static_cast<std::size_t>(state.range(0)));
  const auto u = rfl::gaussian(g);
  const auto t = rfl::HankelTransform::for_grid(g);
  for (auto _ : state) benchmark::DoNotOptimize(t->apply(u.values()));
}
BENCHMARK(BM_TransformApply)->Arg(512)->Arg(2048)->Unit(benchmark::kMicrosecond);

void BM_RieszDirect(benchmark::State& state) {
  const auto g = rfl::RadialGrid::standard(5, 1024);
  const auto u = rfl::gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(rfl::riesz_potential_direct(u, 2.6));
}
BENCHMARK(BM_RieszDirect)->Unit(benchmark::kMillisecond);

void BM_WeinsteinGradient(benchmark::State& state) {
  const auto g = rfl::RadialGrid::standard(5);
  const auto u = rfl::gaussian(g);
  const auto ps = rfl::validate_params(5, 2.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(rfl::weinstein_gradient(u, ps));
}
BENCHMARK(BM_WeinsteinGradient)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
