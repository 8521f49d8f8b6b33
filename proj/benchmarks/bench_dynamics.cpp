#include <benchmark/benchmark.h>

#include <cstdint>

#include "opd/dynamics.hpp"
#include "opd/io.hpp"

namespace {

const opd::GameParams kGame{1.9, 0.6};

void BM_InteractionUtilities(benchmark::State& state) {
  const auto pop = opd::build_lattice(opd::LatticeConfig{100}, 1);
  opd::AgentIndex x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(opd::interaction_utilities(x, pop, kGame));
    x = (x + 7919) % static_cast<opd::AgentIndex>(pop.size());
  }
}
BENCHMARK(BM_InteractionUtilities);

void BM_InnerStep(benchmark::State& state) {
  auto pop = opd::build_lattice(opd::LatticeConfig{100}, 1);
  const opd::CoevolutionParams coevo{0.8, static_cast<double>(state.range(0)) / 10.0};
  opd::Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opd::mc_inner_step(pop, kGame, coevo, rng));
  }
}
BENCHMARK(BM_InnerStep)->Arg(0)->Arg(2)->Arg(10);

// One full Monte Carlo step (side^2 inner steps).
void BM_McStep(benchmark::State& state) {
  const auto side = static_cast<std::uint32_t>(state.range(0));
  auto pop = opd::build_lattice(opd::LatticeConfig{side}, 1);
  const opd::CoevolutionParams coevo{0.8, 0.2};
  opd::Rng rng(3);
  for (auto _ : state) {
    opd::mc_step(pop, kGame, coevo, rng);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pop.size()));
}
BENCHMARK(BM_McStep)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_EncodePpm(benchmark::State& state) {
  const auto pop = opd::build_lattice(opd::LatticeConfig{100}, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opd::encode_ppm(pop));
  }
}
BENCHMARK(BM_EncodePpm);

}  // namespace

BENCHMARK_MAIN();
