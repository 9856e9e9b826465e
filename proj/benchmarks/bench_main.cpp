#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "asense/doa.hpp"
#include "asense/dynamics.hpp"
#include "asense/floquet.hpp"
#include "asense/integrate.hpp"
#include "asense/lyapunov.hpp"

using namespace asense;

static void BM_Rk4Step(benchmark::State& state) {
    const SystemParams p(1.0, 1.0 / std::numbers::sqrt2);
    const auto f = [&p](double t, const State& s) { return closedLoopField(s, t, p); };
    State s{1.0, 1.0};
    double t = 0.0;
    for (auto _ : state) {
        s = rk4Step(f, t, s, 1e-3);
        t += 1e-3;
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_Rk4Step);

static void BM_Simulate60(benchmark::State& state) {
    const SystemParams p(1.0, 1.0 / std::numbers::sqrt2);
    const auto f = [&p](double t, const State& s) { return closedLoopField(s, t, p); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrateState(f, {1.0, 1.0}, 0.0, 60.0, StepperConfig::simulation(), p));
    }
}
BENCHMARK(BM_Simulate60)->Unit(benchmark::kMillisecond);

static void BM_Monodromy(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(monodromy(1.0));
    }
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMicrosecond);

static void BM_Certify(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify(0.43, 1.0 + std::sqrt(7.0)));
    }
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMicrosecond);

// Per-cell cost of the DoA kernel on a converging and a diverging start.
static void BM_DoaCell(benchmark::State& state) {
    const DoaConfig cfg = DoaConfig::defaults();
    const PhaseTable table(7.0 * std::numbers::pi / 8.0, cfg);
    const State s0 = state.range(0) == 0 ? State{1.0, 1.0} : State{2.5, 2.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(table.classify(s0));
    }
}
BENCHMARK(BM_DoaCell)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_DoaGrid(benchmark::State& state) {
    DoaConfig cfg = DoaConfig::defaults();
    cfg.nx = cfg.nz = 40;
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(computeGrid(cfg, threads));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.cellCount() * cfg.t0Samples.size()));
}
BENCHMARK(BM_DoaGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
