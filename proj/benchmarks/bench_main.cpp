#include <benchmark/benchmark.h>

#include "mixsn/count.hpp"
#include "mixsn/enumerate.hpp"
#include "mixsn/harness.hpp"
#include "mixsn/specfun.hpp"

namespace {

using namespace mixsn;

ProblemSpec cst(std::size_t d, double s, double q) {
  return make_problem(std::vector<double>(d, s), std::vector<double>(d, q));
}

// Exact integer keys, d = range(0), n = range(1).
void BM_SingularValuesInteger(benchmark::State& state) {
  const auto w = WeightFunction::tensor(cst(state.range(0), 1, 1));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(w, n));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_SingularValuesInteger)->Args({4, 10000})->Args({10, 100000})->Args({50, 100000});

// Floating keys with q = 2.
void BM_SingularValuesFloat(benchmark::State& state) {
  const auto w = WeightFunction::tensor(cst(state.range(0), 1.5, 2));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(w, n));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_SingularValuesFloat)->Args({4, 10000})->Args({10, 100000});

void BM_SingularValuesEnergy(benchmark::State& state) {
  const auto w = WeightFunction::energy(make_problem(std::vector<double>(state.range(0), 2.0),
                                                     std::vector<double>(state.range(0), 2.0), Target::H1));
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(w, 10000));
}
BENCHMARK(BM_SingularValuesEnergy)->Arg(4)->Arg(8);

void BM_CountExactInteger(benchmark::State& state) {
  const auto spec = cst(state.range(0), 1, 1);
  const double r = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_exact(spec, r));
}
BENCHMARK(BM_CountExactInteger)->Args({4, 10000})->Args({10, 1000})->Args({20, 100});

void BM_CountExactFloat(benchmark::State& state) {
  const auto spec = cst(state.range(0), 0.5, 2);
  const double r = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_exact(spec, r));
}
BENCHMARK(BM_CountExactFloat)->Args({4, 100})->Args({8, 30});

void BM_BruteForceOracle(benchmark::State& state) {
  const auto spec = cst(state.range(0), 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_an(spec, 10000));
}
BENCHMARK(BM_BruteForceOracle)->Arg(2)->Arg(4);

void BM_Zeta(benchmark::State& state) {
  double t = 1.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta(t));
    t = t > 20 ? 1.1 : t + 0.37;
  }
}
BENCHMARK(BM_Zeta);

void BM_OptimalBeta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(optimal_beta(static_cast<double>(state.range(0))));
}
BENCHMARK(BM_OptimalBeta)->Arg(1)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
