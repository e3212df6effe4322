#include <benchmark/benchmark.h>

#include <cmath>

#include "emoa/dominance.hpp"
#include "emoa/hypervolume.hpp"
#include "emoa/rng.hpp"
#include "emoa/selection.hpp"
#include "emoa/truncation.hpp"

namespace {

emoa::SolutionSet random_points(std::size_t n, std::size_t m, std::uint64_t seed) {
  emoa::Rng rng(seed);
  emoa::SolutionSet set(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(m);
    for (double& v : f) v = rng.uniform();
    set[i].objectives = emoa::ObjectiveVector(std::move(f));
    set[i].id = i;
  }
  return set;
}

// Points on the unit simplex are mutually nondominated.
emoa::SolutionSet front_points(std::size_t n, std::size_t m, std::uint64_t seed) {
  emoa::Rng rng(seed);
  emoa::SolutionSet set(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(m);
    double sum = 0.0;
    for (double& v : f) sum += (v = -std::log(1.0 - rng.uniform()));
    for (double& v : f) v /= sum;
    set[i].objectives = emoa::ObjectiveVector(std::move(f));
    set[i].id = i;
  }
  return set;
}

void BM_FilterNaive(benchmark::State& state) {
  const auto set = random_points(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(emoa::nondominated_indices(set, emoa::FilterAlgorithm::Naive));
}
BENCHMARK(BM_FilterNaive)->ArgsProduct({{1000, 4000}, {3, 5, 8}});

void BM_FilterEfficient(benchmark::State& state) {
  const auto set = random_points(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(emoa::nondominated_indices(set, emoa::FilterAlgorithm::EfficientSort));
}
BENCHMARK(BM_FilterEfficient)->ArgsProduct({{1000, 4000, 16000}, {3, 5, 8}});

void BM_TruncateDss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto set = front_points(n + 91, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(emoa::dss_select_indices(set, n));
}
BENCHMARK(BM_TruncateDss)->Arg(91)->Arg(910)->Arg(4550)->Unit(benchmark::kMillisecond);

void BM_TruncateCrowding(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto set = front_points(n + 91, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(emoa::crowding_survivor_indices(set, n));
}
BENCHMARK(BM_TruncateCrowding)->Arg(91)->Arg(910)->Arg(4550)->Unit(benchmark::kMillisecond);

void BM_HypervolumeExact(benchmark::State& state) {
  const auto set = front_points(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 3);
  const auto ref = emoa::ReferencePoint::uniform(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(emoa::hypervolume(set, ref));
}
BENCHMARK(BM_HypervolumeExact)->Args({100, 3})->Args({1000, 3})->Args({100, 5})->Args({50, 8})
    ->Unit(benchmark::kMillisecond);

void BM_HypervolumeMonteCarlo(benchmark::State& state) {
  const auto set = front_points(100, 3, 3);
  const auto ref = emoa::ReferencePoint::uniform(3);
  const emoa::MonteCarloHypervolume mode{static_cast<std::size_t>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(emoa::hypervolume(set, ref, mode));
}
BENCHMARK(BM_HypervolumeMonteCarlo)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_HssLazy(benchmark::State& state) {
  const auto set = front_points(static_cast<std::size_t>(state.range(0)), 3, 4);
  const auto ref = emoa::ReferencePoint::uniform(3);
  for (auto _ : state) benchmark::DoNotOptimize(emoa::hss_lazy_indices(set, 91, ref));
}
BENCHMARK(BM_HssLazy)->Arg(910)->Arg(9100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
