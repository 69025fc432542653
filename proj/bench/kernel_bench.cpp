// Serial reference vs OpenMP kernels on the workloads the library actually runs.

#include <benchmark/benchmark.h>

#include <random>

#include "noisyci/identifiability.hpp"
#include "noisyci/kernels.hpp"
#include "noisyci/separation.hpp"

using namespace noisyci;

namespace {

const MecAtlas& atlas5() {
    static const MecAtlas atlas(5);
    return atlas;
}

Dag bench_dag(int n) {
    std::mt19937_64 rng(42);
    std::bernoulli_distribution coin(0.3);
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) arcs.push_back({u, v});
    return Dag::from_arcs(n, arcs);
}

void BM_AllNearestSerial(benchmark::State& state) {
    const auto& pack = atlas5().tables();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::all_nearest_serial(pack));
    state.SetItemsProcessed(state.iterations() * pack.rows() * (pack.rows() - 1) / 2);
}

void BM_AllNearestParallel(benchmark::State& state) {
    const auto& pack = atlas5().tables();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::all_nearest_parallel(pack));
    state.SetItemsProcessed(state.iterations() * pack.rows() * (pack.rows() - 1));
}

void BM_NearestSerial(benchmark::State& state) {
    const auto& pack = atlas5().tables();
    std::size_t q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::nearest_serial(pack, pack.row(q), q));
        q = (q + 1) % pack.rows();
    }
}

void BM_NearestParallel(benchmark::State& state) {
    const auto& pack = atlas5().tables();
    std::size_t q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::nearest_parallel(pack, pack.row(q), q));
        q = (q + 1) % pack.rows();
    }
}

void BM_FillTableSerial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto d = bench_dag(n);
    auto dep = [&](Vertex u, Vertex v, VertexSet s) { return !d_separates(d, u, v, s); };
    for (auto _ : state) benchmark::DoNotOptimize(kernels::fill_table_serial(n, dep));
    state.SetItemsProcessed(state.iterations() * query_count(n));
}

void BM_FillTableParallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto d = bench_dag(n);
    auto dep = [&](Vertex u, Vertex v, VertexSet s) { return !d_separates(d, u, v, s); };
    for (auto _ : state) benchmark::DoNotOptimize(kernels::fill_table_parallel(n, dep));
    state.SetItemsProcessed(state.iterations() * query_count(n));
}

}  // namespace

BENCHMARK(BM_AllNearestSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllNearestParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NearestParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FillTableSerial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FillTableParallel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
