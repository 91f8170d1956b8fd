#include <benchmark/benchmark.h>

#include <random>

#include "atrlab/koenig.hpp"

using namespace atrlab;

namespace {

// Random bipartite graph with nx + ny vertices, X = {0..nx-1}.
BipartiteGraph random_graph(std::size_t nx, std::size_t ny, double p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(p);
  std::vector<Nat> vs(nx + ny);
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = i;
  std::vector<Edge> es;
  for (Nat x = 0; x < nx; ++x)
    for (Nat y = nx; y < nx + ny; ++y)
      if (edge(rng)) es.push_back({x, y});
  std::set<Nat> xs;
  for (Nat x = 0; x < nx; ++x) xs.insert(x);
  return BipartiteGraph::make(vs, es, xs);
}

}  // namespace

static void BM_KoenigCover(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto G = random_graph(n, n, 0.3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(koenig_cover(G));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KoenigCover)->RangeMultiplier(2)->Range(8, 512)->Complexity();

static void BM_SimpsonCover(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto G = random_graph(n, n, 0.4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(simpson_cover(G, 2 * n));
}
BENCHMARK(BM_SimpsonCover)->DenseRange(2, 5);

static void BM_EnumerateCovers(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto G = random_graph(n, n, 0.4, 7);
  std::size_t count = 0;
  for (auto _ : state) count = enumerate_koenig_covers(G).size();
  state.counters["covers"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateCovers)->DenseRange(2, 8);

BENCHMARK_MAIN();
