#include <benchmark/benchmark.h>

#include <random>

#include "gridcode/automaton.hpp"
#include "gridcode/constraints.hpp"
#include "gridcode/mmc.hpp"
#include "gridcode/mmc_kernels.hpp"

using namespace gridcode;

namespace {

WeightedDigraph random_graph(std::size_t n, std::size_t degree) {
  std::mt19937_64 rng(n * 31 + degree);
  std::uniform_int_distribution<NodeId> any(0, static_cast<NodeId>(n - 1));
  std::uniform_int_distribution<Weight> weight(0, 9);
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    edges.push_back({u, static_cast<NodeId>((u + 1) % n), weight(rng)});
    for (std::size_t d = 1; d < degree; ++d) edges.push_back({u, any(rng), weight(rng)});
  }
  return WeightedDigraph(n, 0, std::move(edges));
}

void BM_RelaxSerial(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 8);
  const kernels::InEdges in(g);
  std::vector<Weight> prev(g.node_count(), 0), cur(g.node_count());
  std::vector<NodeId> pred(g.node_count());
  for (auto _ : state) {
    kernels::relax_serial(in, prev, cur, pred);
    benchmark::DoNotOptimize(cur.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.edge_count()));
}

void BM_RelaxParallel(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 8);
  const kernels::InEdges in(g);
  std::vector<Weight> prev(g.node_count(), 0), cur(g.node_count());
  std::vector<NodeId> pred(g.node_count());
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    kernels::relax_parallel(in, prev, cur, pred, threads);
    benchmark::DoNotOptimize(cur.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.edge_count()));
}

void BM_KarpReference(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    Rational alpha;
    benchmark::DoNotOptimize(kernels::karp_reference_alpha(g, alpha));
  }
}

void BM_Karp(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 4);
  const auto variant = static_cast<KarpVariant>(state.range(1));
  KarpOptions opt;
  opt.threads = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(karp(g, variant, opt).alpha);
  state.SetLabel(karp_variant_name(variant));
}

void BM_BuildHex04(benchmark::State& state) {
  const NormalizedPeriod norm = normalize_period(make_preset_grid("hex"), {0, 4});
  const StripAutomaton a(generate_clauses(norm.grid, {CodeKind::Identifying, 1}), norm.period);
  BuildOptions opt;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a.build(opt).node_count());
}

}  // namespace

BENCHMARK(BM_RelaxSerial)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_RelaxParallel)->Args({1 << 14, 2})->Args({1 << 18, 2})->Args({1 << 18, 4});
BENCHMARK(BM_KarpReference)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Karp)
    ->ArgsProduct({{500, 2000}, {0, 1, 2}, {1, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildHex04)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
