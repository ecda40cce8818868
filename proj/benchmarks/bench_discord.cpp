#include "discordlab/conjectures.hpp"
#include "discordlab/discord.hpp"
#include "discordlab/steering.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

namespace {

using namespace discordlab;

const XStateParams kX{0.4, 0.1, 0.2, 0.3, 0.1, 0.05, 0.3, -0.4};

void BM_XClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(x_state_min_entropy(kX).value);
}
BENCHMARK(BM_XClosedForm);

void BM_XEllipsoid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ellipsoid_from_x_state(kX).semi_axes);
}
BENCHMARK(BM_XEllipsoid);

void BM_PauliExpansion(benchmark::State& state) {
  const auto rho = make_x_state(kX);
  for (auto _ : state) benchmark::DoNotOptimize(pauli_expansion(rho).entries());
}
BENCHMARK(BM_PauliExpansion);

void BM_OracleByGrid(benchmark::State& state) {
  const auto R = pauli_expansion(make_x_state(kX));
  const GridSpec grid{static_cast<int>(state.range(0)), static_cast<int>(2 * (state.range(0) - 1)),
                      1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_entropy(R, grid).min_entropy);
}
BENCHMARK(BM_OracleByGrid)->Arg(46)->Arg(91)->Arg(181)->Unit(benchmark::kMillisecond);

void BM_MixtureGapSample(benchmark::State& state) {
  const MixtureParams p{0.5, std::numbers::pi / 5, std::numbers::pi / 3};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_gap(p).gap);
}
BENCHMARK(BM_MixtureGapSample)->Unit(benchmark::kMillisecond);

void BM_EqualNormOptimum(benchmark::State& state) {
  const auto R = pauli_expansion(make_x_state(kX));
  for (auto _ : state) benchmark::DoNotOptimize(equal_norm_optimum(R).norm);
}
BENCHMARK(BM_EqualNormOptimum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
