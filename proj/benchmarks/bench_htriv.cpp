#include "htriv/catalog.hpp"
#include "htriv/cohomline.hpp"
#include "htriv/plsearch.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace htriv;

void BM_SmithNormalForm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<long>(rng() % 41) - 20;
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

void BM_DeltaExhaustive(benchmark::State& state) {
    const StackyFan& fan = catalog_fan(state.range(0) == 0 ? "hexagon" : "P1xP1xP1");
    for (auto _ : state) benchmark::DoNotOptimize(delta_set(fan));
}
BENCHMARK(BM_DeltaExhaustive)->Arg(0)->Arg(1);

void BM_DeltaFast(benchmark::State& state) {
    std::vector<IntVector> rays;
    // Regular-ish polygon with many rays.
    const long n = state.range(0);
    for (long k = 0; k < n; ++k) {
        long x = k < n / 2 ? n / 2 - 2 * k : -n / 2 + 2 * (k - n / 2);
        long y = k < n / 2 ? 1 : -1;
        IntVector v;
        v.emplace_back(x);
        v.emplace_back(y);
        rays.push_back(v);
    }
    StackyFan fan = cyclic_fan_2d(rays);
    for (auto _ : state) benchmark::DoNotOptimize(delta_fast_lowdim(fan));
}
BENCHMARK(BM_DeltaFast)->Arg(8)->Arg(12)->Arg(16);

void BM_CohomologyP3(benchmark::State& state) {
    const StackyFan& fan = catalog_fan("P3");
    DeltaFamily delta = delta_set(fan);
    IntVector a(4);
    a[0] = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(cohomology(fan, delta, a));
}
BENCHMARK(BM_CohomologyP3)->Arg(2)->Arg(6)->Arg(12);

void BM_ScanP1xP2(benchmark::State& state) {
    const StackyFan& fan = catalog_fan("P1xP2");
    PicStructure pic(fan);
    DeltaFamily delta = delta_set(fan);
    const long r = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(scan_h_trivial(fan, pic, delta, {{-r, r}, {-r, r}}));
}
BENCHMARK(BM_ScanP1xP2)->Arg(3)->Arg(6);

void BM_FindPsi(benchmark::State& state) {
    const StackyFan& fan = catalog_fan("P1xP1xP1");
    for (auto _ : state) benchmark::DoNotOptimize(find_degenerate_psi(fan));
}
BENCHMARK(BM_FindPsi);

}  // namespace

BENCHMARK_MAIN();
