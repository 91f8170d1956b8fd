#include <benchmark/benchmark.h>

#include "atrlab/coding.hpp"
#include "atrlab/problems.hpp"

using namespace atrlab;

namespace {

JumpOperator suite() { return JumpOperator::suite(programs::default_suite(), 50); }

ForestCovers matching_covers(const HierarchyForest& F) {
  ForestCovers out;
  for (const auto& [b, n] : F.tree_ids()) out[{b, n}] = koenig_cover(tree_graph(F.tree(b, n)));
  return out;
}

}  // namespace

static void BM_BuildForest(benchmark::State& state) {
  auto L = make_labeled(FiniteOrder::chain(static_cast<Nat>(state.range(0))));
  std::size_t nodes = 0;
  for (auto _ : state) {
    auto F = build_forest(L, {0, 1}, suite());
    nodes = 0;
    for (const auto& [b, n] : F.tree_ids()) nodes += F.tree(b, n).size();
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_BuildForest)->DenseRange(1, 3);

static void BM_CheckConsistency(benchmark::State& state) {
  auto F = build_forest(make_labeled(FiniteOrder::chain(static_cast<Nat>(state.range(0)))), {0, 1}, suite());
  auto covers = matching_covers(F);
  for (auto _ : state) benchmark::DoNotOptimize(check_consistency(F, covers));
}
BENCHMARK(BM_CheckConsistency)->DenseRange(2, 3);

static void BM_DecodeForest(benchmark::State& state) {
  auto F = build_forest(make_labeled(FiniteOrder::chain(3)), {0, 1}, suite());
  auto covers = matching_covers(F);
  for (auto _ : state) benchmark::DoNotOptimize(decode_forest(F, covers));
}
BENCHMARK(BM_DecodeForest);

// Every cover of the largest tree in the chain-2 forest.
static void BM_EnumerateJumpTreeCovers(benchmark::State& state) {
  auto F = build_forest(make_labeled(FiniteOrder::chain(2)), {0, 1}, suite());
  std::pair<Nat, Nat> largest{0, 0};
  for (const auto& id : F.tree_ids())
    if (F.tree(id.first, id.second).size() > F.tree(largest.first, largest.second).size()) largest = id;
  auto G = tree_graph(F.tree(largest.first, largest.second));
  std::size_t count = 0;
  for (auto _ : state) count = for_each_koenig_cover(G, [](const KoenigCover&) { return true; }, {64, 1u << 22});
  state.counters["covers"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateJumpTreeCovers)->Unit(benchmark::kMillisecond);

static void BM_AtrToKdtOracle(benchmark::State& state) {
  std::vector<AtrInstance> xs{{make_labeled(FiniteOrder::chain(3)), {0, 1}, suite()}};
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_reduction(atr_to_kdt(), atr_problem(), kdt_family_problem(), xs, VerifyMode::Oracle));
}
BENCHMARK(BM_AtrToKdtOracle);

static void BM_CwoSolve(benchmark::State& state) {
  auto n = static_cast<Nat>(state.range(0));
  auto L = FiniteOrder::chain(n), M = FiniteOrder::chain(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(cwo_solve(L, M));
}
BENCHMARK(BM_CwoSolve)->RangeMultiplier(4)->Range(4, 256);

BENCHMARK_MAIN();
