#include <benchmark/benchmark.h>

#include "adhm/spectral.hpp"

using namespace adhm;

namespace {

const CoverDescription& cover_for(int which) {
    static const CoverDescription two_point = build_cover_charge2_q2();
    static const CoverDescription charge1 = build_cover_charge1(5);
    return which == 0 ? two_point : charge1;
}

void BM_PagesParallel(benchmark::State& state) {
    const auto& c = cover_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_pages(c, static_cast<int>(state.range(1))));
}

void BM_PagesSerial(benchmark::State& state) {
    const auto& c = cover_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_pages_serial(c, static_cast<int>(state.range(1))));
}

void BM_SimplexAssembly(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(simplex_assembly(static_cast<int>(state.range(0)), 16));
}

}  // namespace

// range(0): 0 = charge-2 two-point cover, 1 = charge-1 cover with q = 5
BENCHMARK(BM_PagesParallel)->ArgsProduct({{0, 1}, {12, 24}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PagesSerial)->ArgsProduct({{0, 1}, {12, 24}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimplexAssembly)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
