#include "skipdft/dft.hpp"
#include "skipdft/periodogram.hpp"
#include "skipdft/process.hpp"
#include "skipdft/skip_sample.hpp"
#include "skipdft/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace skipdft;

namespace {

void BM_ComputeDft(benchmark::State& state) {
    const auto x = generate(white_noise(), static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(compute_dft(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeDft)->RangeMultiplier(4)->Range(256, 1 << 18)->Arg(10007)->Complexity(benchmark::oNLogN);

void BM_Periodogram(benchmark::State& state) {
    const auto x = generate(white_noise(), static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(periodogram_at_fourier(x));
}
BENCHMARK(BM_Periodogram)->Arg(4096)->Arg(65536);

void BM_SkipStatistics(benchmark::State& state) {
    const std::size_t T = static_cast<std::size_t>(state.range(0));
    const auto plan = make_plan(T, default_block_length(T));
    const auto I = periodogram_at_fourier(generate(ar1_process(0.5), T, 3).head(plan.effective_T));
    const auto stat = StatisticSpec::autocorrelation(1);
    for (auto _ : state) benchmark::DoNotOptimize(skip_statistics(I, stat, plan));
}
BENCHMARK(BM_SkipStatistics)->Arg(4096)->Arg(65536);

void BM_GenerateAr1(benchmark::State& state) {
    const auto spec = ar1_process(0.5);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate(spec, static_cast<std::size_t>(state.range(0)), ++seed));
}
BENCHMARK(BM_GenerateAr1)->Arg(4096)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
