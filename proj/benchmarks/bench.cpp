#include <benchmark/benchmark.h>

#include <cmath>

#include "rdc/backstepping.hpp"
#include "rdc/bessel.hpp"
#include "rdc/identifier.hpp"
#include "rdc/plant.hpp"
#include "rdc/spectral.hpp"
#include "rdc/supervisor.hpp"

using namespace rdc;

namespace {

StateProfile bench_ic(const SpatialGrid& g) {
    return make_profile(g, 0.0, [](double x) {
        return std::sqrt(2.0) * std::sin(kPi * x) + x * x - x * x * x;
    });
}

void BM_BesselJ1(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j1(x));
        x = (x < 49.0) ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselJ1);

void BM_KernelRatio(benchmark::State& state) {
    double q = -11.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(i1_ratio(q));
        q = (q < 11.0) ? q + 0.13 : -11.0;
    }
}
BENCHMARK(BM_KernelRatio);

void BM_CrankNicolsonStep(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    SpatialGrid grid{m};
    PlantParams pp{1.0, 11.0, 1.0};
    CrankNicolson cn(grid, pp);
    StateProfile u = bench_ic(grid);
    for (auto _ : state) {
        u = cn.step(u, 0.1, 1e-4);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(BM_CrankNicolsonStep)->Arg(100)->Arg(400);

void BM_FeedbackStep(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    SpatialGrid grid{m};
    PlantParams pp{1.0, 11.0, 1.0};
    CrankNicolson cn(grid, pp);
    const auto sch = select_schedule(11.0, DesignParams{}, 1.0);
    const auto w = feedback_row(sch, 1.0, grid);
    StateProfile u = bench_ic(grid);
    for (auto _ : state) {
        u = cn.step_feedback(u, w, 1e-4);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(BM_FeedbackStep)->Arg(100)->Arg(400);

void BM_ModalGains(benchmark::State& state) {
    DesignParams dp;
    dp.quad_panels = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto g = modal_gains(11.0, 19, dp, 1.0);
        benchmark::DoNotOptimize(g.data());
    }
}
BENCHMARK(BM_ModalGains)->Arg(2000)->Arg(10000);

void BM_ScheduleSelection(benchmark::State& state) {
    const DesignParams dp;
    for (auto _ : state) {
        auto sch = select_schedule(11.0, dp, 1.0);
        benchmark::DoNotOptimize(sch.N);
    }
}
BENCHMARK(BM_ScheduleSelection);

void BM_WindowAssembly(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    ModalTrace tr(5);
    std::vector<double> a(5);
    const double dt = 0.05 / K;
    for (int k = 0; k <= K; ++k) {
        const double t = k * dt;
        for (int n = 0; n < 5; ++n) a[n] = std::sin((n + 1) * t * 40.0);
        tr.push(t, a, std::cos(25.0 * t), 1.0);
    }
    for (auto _ : state) {
        const auto w = make_window(tr, 0.0, 0.05);
        auto eqs = assemble_normal_equations(w, 1.0);
        benchmark::DoNotOptimize(eqs.modes.data());
    }
}
BENCHMARK(BM_WindowAssembly)->Arg(500)->Arg(5000);

void BM_SpectralOracle(benchmark::State& state) {
    PlantParams pp{1.0, 11.0, 1.0};
    const auto sch = select_schedule(11.0, DesignParams{}, 1.0);
    std::vector<double> a0(40, 0.0);
    for (int i = 0; i < 40; ++i) a0[i] = 1.0 / (1.0 + i * i);
    for (auto _ : state) {
        auto at = spectral_oracle(pp, sch, 1.0, a0, 0.05);
        benchmark::DoNotOptimize(at.data());
    }
}
BENCHMARK(BM_SpectralOracle);

void BM_VolterraRoundtrip(benchmark::State& state) {
    const int pts = static_cast<int>(state.range(0));
    std::vector<double> prof(pts);
    for (int i = 0; i < pts; ++i) prof[i] = std::sqrt(2.0) * std::sin(kPi * i / (pts - 1.0));
    const DesignParams dp;
    for (auto _ : state) {
        benchmark::DoNotOptimize(volterra_roundtrip(prof, 11.0, dp, 1.0));
    }
}
BENCHMARK(BM_VolterraRoundtrip)->Arg(250)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
