// Exhaustive universal bounds: OpenMP kernel against the serial reference.

#include <cmath>

#include <benchmark/benchmark.h>

#include "cfw/instances.hpp"
#include "cfw/weaving.hpp"

namespace {

cfw::WeavingTerms terms(std::size_t nodes, std::size_t members, cfw::Index d) {
  cfw::RandomFamilyParams p;
  p.dim = d;
  p.nodes = nodes;
  p.members = members;
  p.dim_max = 2;
  p.seed = 17;
  return cfw::weaving_terms(cfw::random_fusion_family(p));
}

void BM_parallel(benchmark::State& state) {
  const auto t = terms(static_cast<std::size_t>(state.range(0)),
                       static_cast<std::size_t>(state.range(1)), state.range(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(cfw::universal_bounds(t, cfw::SearchStrategy::exhaustive(1u << 20)));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(std::pow(state.range(1), state.range(0))));
}

void BM_serial(benchmark::State& state) {
  const auto t = terms(static_cast<std::size_t>(state.range(0)),
                       static_cast<std::size_t>(state.range(1)), state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(cfw::universal_bounds_serial(t, 1u << 20));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(std::pow(state.range(1), state.range(0))));
}

// nodes, members, dimension
#define SHAPES Args({8, 2, 3})->Args({12, 2, 4})->Args({8, 3, 4})->Args({10, 3, 6})

BENCHMARK(BM_parallel)->SHAPES->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_serial)->SHAPES->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
