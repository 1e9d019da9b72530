#include <benchmark/benchmark.h>

#include <random>

#include "hydra/axioms.hpp"
#include "hydra/bisim.hpp"
#include "hydra/hset.hpp"

namespace {

hydra::Apg random_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<hydra::NodeId, hydra::NodeId>> es;
    es.reserve(edges);
    for (std::size_t i = 0; i < edges; ++i)
        es.emplace_back(static_cast<hydra::NodeId>(rng() % nodes),
                        static_cast<hydra::NodeId>(rng() % nodes));
    return hydra::Apg::build(nodes, es, 0);
}

void BM_Minimize(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const hydra::Apg g = random_graph(n, 3 * n, 7);
    for (auto _ : state) {
        auto result = hydra::minimize(g);
        benchmark::DoNotOptimize(result);
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Minimize)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_RefinePartition(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const hydra::Apg g = random_graph(n, 3 * n, 11);
    const hydra::Partition init = hydra::Partition::trivial(n);
    for (auto _ : state) {
        auto p = hydra::refine_partition(g, init);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_RefinePartition)->Arg(200)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);

void BM_NaiveRefinement(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const hydra::Apg g = random_graph(n, 3 * n, 11);
    const hydra::Partition init = hydra::Partition::trivial(n);
    for (auto _ : state) {
        auto p = hydra::naive_largest_bisimulation(g, init);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_NaiveRefinement)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_Intern(benchmark::State& state) {
    hydra::Universe universe;
    std::mt19937_64 rng(3);
    std::vector<hydra::Apg> graphs;
    for (int i = 0; i < 64; ++i) graphs.push_back(hydra::random_graph(rng, 12, 0.5));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(universe.intern(graphs[i++ % graphs.size()]));
    }
}
BENCHMARK(BM_Intern);

}  // namespace

BENCHMARK_MAIN();
