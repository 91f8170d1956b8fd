#include <benchmark/benchmark.h>

#include "atrlab/machine.hpp"
#include "atrlab/trees.hpp"

using namespace atrlab;

static void BM_MinimalHaltingPairs(benchmark::State& state) {
  auto p = programs::halt_on_both(0, 2);
  auto s = static_cast<Nat>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_halting_pairs(p, 0, s));
}
BENCHMARK(BM_MinimalHaltingPairs)->RangeMultiplier(4)->Range(8, 512);

static void BM_RunCountdown(benchmark::State& state) {
  // r0 := x; loop: JZ r0 -> halt; DEC r0; JZ r1 -> loop
  Program p({instr::jz(0, 3), instr::dec(0), instr::jz(1, 0), instr::halt()});
  auto x = static_cast<Nat>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(p, oracle_from_set({}), 4 * x + 8, x));
}
BENCHMARK(BM_RunCountdown)->RangeMultiplier(8)->Range(8, 4096);

static void BM_ProgramDecode(benchmark::State& state) {
  BigNat index = programs::default_suite().back().index();
  for (auto _ : state) benchmark::DoNotOptimize(Program::decode(index));
}
BENCHMARK(BM_ProgramDecode);

static void BM_FattenRank(benchmark::State& state) {
  FiniteTree T = full_binary_tree(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_value(fatten(T, 2)));
}
BENCHMARK(BM_FattenRank)->DenseRange(2, 4);

static void BM_MinRank(benchmark::State& state) {
  std::vector<LazyTree> family;
  for (std::size_t k = 0; k < 3; ++k) family.push_back(full_binary_tree(static_cast<std::size_t>(state.range(0))).lazy());
  for (auto _ : state) benchmark::DoNotOptimize(rank_value(tree_min(family)));
}
BENCHMARK(BM_MinRank)->DenseRange(1, 4);

static void BM_MaterializeCombine(benchmark::State& state) {
  std::vector<LazyTree> family(static_cast<std::size_t>(state.range(0)), three_node_tree());
  for (auto _ : state) benchmark::DoNotOptimize(materialize(combine({combine(family), complement(combine(family))})));
}
BENCHMARK(BM_MaterializeCombine)->DenseRange(1, 4);

BENCHMARK_MAIN();
