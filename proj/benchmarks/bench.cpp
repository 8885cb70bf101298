#include <benchmark/benchmark.h>

#include "gaussfactor/gauss_sum.hpp"
#include "gaussfactor/scan.hpp"
#include "gaussfactor/spin.hpp"

namespace {

using namespace gaussfactor;

void BM_GaussSumA(benchmark::State& state) {
    const TargetNumber n = TargetNumber::parse("1062885837863046188098307");
    const auto m_max = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gauss_sum_a(n, 790645490047ull, m_max));
    state.SetItemsProcessed(state.iterations() * (state.range(0) + 1));
}
BENCHMARK(BM_GaussSumA)->Arg(10)->Arg(200)->Arg(10000);

void BM_FullScan(benchmark::State& state) {
    // n0 = 10000
    const ScanConfig config{.n = TargetNumber(100'000'007ul), .m_max = 10,
                            .workers = static_cast<unsigned>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(scan(config).records.size());
}
BENCHMARK(BM_FullScan)->Arg(1)->Arg(4)->UseRealTime();

void BM_Propagate(benchmark::State& state) {
    const auto m_max = static_cast<std::uint64_t>(state.range(0));
    const TargetNumber n(157573);
    for (auto _ : state) benchmark::DoNotOptimize(spin::simulate_gauss_sequence(n, 18, m_max).values.size());
}
BENCHMARK(BM_Propagate)->Arg(10)->Arg(1000);

}  // namespace

// The distro benchmark_main archive is LTO bytecode tied to one gcc patch release.
BENCHMARK_MAIN();
