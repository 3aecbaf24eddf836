#include <benchmark/benchmark.h>

#include "netmode/classification.hpp"
#include "netmode/generation.hpp"
#include "netmode/matching.hpp"
#include "netmode/rewiring.hpp"

namespace {

netmode::DirectedGraph make_graph(std::int64_t n, double k) {
    netmode::GeneratorConfig config;
    config.n = n;
    config.k = k;
    config.gamma_in = config.gamma_out = 3.0;
    config.seed = 42;
    config.model = netmode::GraphModel::StaticScaleFree;
    return netmode::scale_free_digraph(config);
}

void BM_Generate(benchmark::State& state) {
    for (auto _ : state) {
        auto g = make_graph(state.range(0), 10.0);
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_Generate)->Arg(10000)->Arg(100000);

void BM_MaximumMatching(benchmark::State& state) {
    const auto g = make_graph(state.range(0), 10.0);
    for (auto _ : state) {
        auto m = netmode::maximum_matching(g);
        benchmark::DoNotOptimize(m.size());
    }
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_MaximumMatching)->Arg(10000)->Arg(100000);

void BM_ClassifyNodes(benchmark::State& state) {
    const auto g = make_graph(state.range(0), 10.0);
    const auto m = netmode::maximum_matching(g);
    for (auto _ : state) {
        auto cls = netmode::classify_nodes(g, m);
        benchmark::DoNotOptimize(cls.input_count);
    }
}
BENCHMARK(BM_ClassifyNodes)->Arg(10000)->Arg(100000);

void BM_AlternatingComponents(benchmark::State& state) {
    const auto g = make_graph(state.range(0), 10.0);
    const auto m = netmode::maximum_matching(g);
    for (auto _ : state) {
        auto comps = netmode::alternating_components(g, m);
        benchmark::DoNotOptimize(comps.size());
    }
}
BENCHMARK(BM_AlternatingComponents)->Arg(10000)->Arg(100000);

void BM_AlterToCentralized(benchmark::State& state) {
    const auto original = make_graph(state.range(0), 10.0);
    for (auto _ : state) {
        state.PauseTiming();
        auto g = original;
        state.ResumeTiming();
        auto outcome = netmode::alter_to_centralized(g);
        benchmark::DoNotOptimize(outcome.num_modified);
    }
}
BENCHMARK(BM_AlterToCentralized)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
