#include <benchmark/benchmark.h>

#include "ndseq/classical.hpp"
#include "ndseq/indices.hpp"
#include "ndseq/nds.hpp"
#include "ndseq/null_models.hpp"
#include "ndseq/wl.hpp"

using namespace ndseq;

namespace {

Graph ba(std::int64_t n) { return generate(BarabasiAlbert{static_cast<std::size_t>(n), 4, 3}, 1); }

void BM_NdsTable(benchmark::State& state) {
    const Graph g = ba(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(NdsTable(g));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_NdsTable)->RangeMultiplier(4)->Range(256, 65536);

void BM_NdsIndices(benchmark::State& state) {
    const Graph g = ba(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(compute_nds_indices(g));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_NdsIndices)->RangeMultiplier(4)->Range(256, 65536);

void BM_Rewire(benchmark::State& state) {
    const Graph g = ba(state.range(0));
    RewireConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rewire(g, cfg));
        ++cfg.seed;
    }
    state.SetItemsProcessed(state.iterations() * 10 * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_Rewire)->RangeMultiplier(4)->Range(256, 16384);

void BM_Modularity(benchmark::State& state) {
    const Graph g = ba(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(modularity(g, 0));
}
BENCHMARK(BM_Modularity)->RangeMultiplier(4)->Range(256, 4096);

void BM_PathLength(benchmark::State& state) {
    const Graph g = ba(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(characteristic_path_length(g, 1));
}
BENCHMARK(BM_PathLength)->RangeMultiplier(4)->Range(256, 4096);

void BM_VerifyEquivalence(benchmark::State& state) {
    const Graph g = ba(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_equivalence(g));
}
BENCHMARK(BM_VerifyEquivalence)->RangeMultiplier(4)->Range(256, 16384);

}  // namespace
