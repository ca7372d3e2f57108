#include <benchmark/benchmark.h>

#include "sns/analysis.hpp"
#include "sns/pressure.hpp"
#include "sns/scheme.hpp"

namespace {

using namespace sns;

void BM_NonlinearTerm(benchmark::State& state) {
    const GridSpec grid(static_cast<int>(state.range(0)));
    Workspace ws(grid);
    const SpectralVelocity u = random_divfree_field(grid, 42, 5.0, 1.0);
    for (auto _ : state) {
        SpectralVelocity nl = nonlinear_term(u, ws);
        benchmark::DoNotOptimize(nl.comp[0].data());
    }
}
BENCHMARK(BM_NonlinearTerm)->Arg(32)->Arg(64)->Arg(128);

void BM_MidpointStep(benchmark::State& state) {
    const GridSpec grid(static_cast<int>(state.range(0)));
    Workspace ws(grid);
    const NoiseModel noise{{Vec2{1.0, 0.0}, Vec2{0.6, 0.8}}};
    SchemeConfig cfg;
    cfg.steps = 256;
    const SpectralVelocity u =
        add(taylor_green(grid), random_divfree_field(grid, 42, 5.0, 0.1));
    const std::vector<double> dW{0.02, -0.015};
    for (auto _ : state) {
        StepResult r = midpoint_step(u, dW, noise, cfg, ws);
        benchmark::DoNotOptimize(r.next.comp[0].data());
    }
}
BENCHMARK(BM_MidpointStep)->Arg(32)->Arg(64)->Arg(128);

void BM_PressureDet(benchmark::State& state) {
    const GridSpec grid(static_cast<int>(state.range(0)));
    Workspace ws(grid);
    const SpectralVelocity u = random_divfree_field(grid, 42, 5.0, 1.0);
    for (auto _ : state) {
        ScalarField pi = pressure_det(u, ws);
        benchmark::DoNotOptimize(pi.coeffs.data());
    }
}
BENCHMARK(BM_PressureDet)->Arg(64);

void BM_GeneratePath(benchmark::State& state) {
    for (auto _ : state) {
        WienerPath p = generate_path(7, 2, static_cast<int>(state.range(0)), 0.5);
        benchmark::DoNotOptimize(p.increments[0].data());
    }
}
BENCHMARK(BM_GeneratePath)->Arg(1 << 12)->Arg(1 << 16);

void BM_CoarsenIncrements(benchmark::State& state) {
    const WienerPath p = generate_path(7, 2, 1 << 16, 0.5);
    for (auto _ : state) {
        auto c = coarsen_increments(p, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(c[0].data());
    }
}
BENCHMARK(BM_CoarsenIncrements)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
