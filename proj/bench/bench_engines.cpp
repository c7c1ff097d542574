// Serial peeling against the OpenMP local engines on one synthetic graph.
//
//   bench_engines --benchmark_filter=truss

#include <benchmark/benchmark.h>

#include "nucleus/local.hpp"
#include "nucleus/peeling.hpp"
#include "random_graphs.hpp"

using namespace nucleus;

namespace {

// Sparse background plus a dense block: ~30K edges, nontrivial truss levels.
const Graph& graph() {
  static const Graph g = gen::planted(3000, 0.005, 250, 0.35, 42);
  return g;
}

const CliqueSet& cliques(int r) {
  static const CliqueSet sets[3] = {CliqueSet::enumerate(graph(), 1), CliqueSet::enumerate(graph(), 2),
                                    CliqueSet::enumerate(graph(), 3)};
  return sets[r - 1];
}

void BM_Peel(benchmark::State& state) {
  const auto& cs = cliques(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(peel(graph(), cs));
  state.counters["cliques"] = static_cast<double>(cs.size());
}

void BM_Snd(benchmark::State& state) {
  const auto& cs = cliques(static_cast<int>(state.range(0)));
  EngineOptions o;
  o.threads = static_cast<int>(state.range(1));
  std::size_t passes = 0;
  for (auto _ : state) passes = run_snd(graph(), cs, o).iterations;
  state.counters["passes"] = static_cast<double>(passes);
}

void BM_And(benchmark::State& state) {
  const auto& cs = cliques(static_cast<int>(state.range(0)));
  EngineOptions o;
  o.threads = static_cast<int>(state.range(1));
  o.notify = state.range(2) != 0;
  std::size_t passes = 0, work = 0;
  for (auto _ : state) {
    auto r = run_and(graph(), cs, o);
    passes = r.iterations;
    work = r.recomputations();
  }
  state.counters["passes"] = static_cast<double>(passes);
  state.counters["recomputations"] = static_cast<double>(work);
}

void BM_Enumerate(benchmark::State& state) {
  const Graph& g = graph();
  for (auto _ : state) benchmark::DoNotOptimize(CliqueSet::enumerate(g, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_Enumerate)->ArgName("r")->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Peel)->ArgName("r")->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Snd)->ArgNames({"r", "threads"})->ArgsProduct({{1, 2, 3}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_And)
    ->ArgNames({"r", "threads", "notify"})
    ->ArgsProduct({{1, 2, 3}, {1, 2, 4, 8}, {0, 1}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
