#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "cobell/bench.hpp"
#include "cobell/correlation.hpp"
#include "cobell/noise.hpp"
#include "cobell/quantum.hpp"

namespace {

constexpr double pi = std::numbers::pi;

cobell::PhaseProcess piecewise(std::uint64_t seed) {
    cobell::PhaseProcess p;
    p.kind = cobell::PhaseKind::PiecewiseUniform;
    p.seed = seed;
    return p;
}

void BM_PhaseTrace(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const cobell::PhaseTrace trace = cobell::sample_phase_trace(piecewise(seed++), n);
        benchmark::DoNotOptimize(trace.samples.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PhaseTrace)->Arg(1 << 12)->Arg(1 << 16);

void BM_BeatSample(benchmark::State& state) {
    const cobell::BellPreparation prep{cobell::BellState::PsiMinus};
    const cobell::BenchConfig config;
    const auto amps =
        cobell::arm_amplitudes(prep, cobell::Arm::One, cobell::AnalyzerSetting(pi / 8), config);
    double phi = 0.0;
    for (auto _ : state) {
        phi += 1e-3;
        benchmark::DoNotOptimize(cobell::beat_sample(amps, phi));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_BeatSample);

void BM_BeatTracePair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const cobell::BellPreparation prep{cobell::BellState::PsiMinus};
    const cobell::BenchConfig config;
    const cobell::PhaseTrace phases = cobell::sample_phase_trace(piecewise(7), n);
    for (auto _ : state) {
        const auto traces = cobell::simulate_beat_traces(
            prep, cobell::AnalyzerSetting(0.0), cobell::AnalyzerSetting(pi / 6), phases, config);
        benchmark::DoNotOptimize(traces.first.samples.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_BeatTracePair)->Arg(1 << 12)->Arg(1 << 16);

void BM_ScanPoint(benchmark::State& state) {
    const cobell::BellPreparation prep{cobell::BellState::PsiMinus};
    cobell::ScanConfig sc;
    sc.noise = piecewise(0);
    sc.n_samples = static_cast<std::size_t>(state.range(0));
    sc.threads = 1;
    const std::vector<double> grid = {pi / 3};
    for (auto _ : state) {
        const auto table = cobell::correlation_scan(prep, cobell::AnalyzerSetting(0.0), grid, sc);
        benchmark::DoNotOptimize(table.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ScanPoint)->Arg(1 << 14);

void BM_QuantumCorrelation(benchmark::State& state) {
    const auto psi = cobell::TwoPhotonState::bell(cobell::BellState::PhiPlus);
    double theta = 0.0;
    for (auto _ : state) {
        theta += 1e-3;
        benchmark::DoNotOptimize(cobell::quantum_correlation(
            psi, cobell::AnalyzerSetting(theta), cobell::AnalyzerSetting(theta + pi / 6)));
    }
}
BENCHMARK(BM_QuantumCorrelation);

}  // namespace

BENCHMARK_MAIN();
