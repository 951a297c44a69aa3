#include <benchmark/benchmark.h>

#include <random>

#include "weldtherm/inner_layer.hpp"
#include "weldtherm/numerics.hpp"
#include "weldtherm/outer_hard.hpp"
#include "weldtherm/outer_soft.hpp"

namespace {

using namespace weldtherm;

MaterialProps ti_like() { return {4420.0, 550.0, 10.98812, 1.7e8, 1350.0, 9000.0}; }

ProcessParams hard_process() {
    ProcessParams p{1e8, 0.01, 0.5, 0.018, 300.0, MaterialModel::hard,
                    CouplingMode::computed_from_bvp};
    return p;
}

void BM_SolveTridiag(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Tridiag sys;
    sys.lower.assign(n, -1.0);
    sys.diag.assign(n, 4.0);
    sys.upper.assign(n, -1.0);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> rhs(n);
    for (auto& v : rhs) v = dist(rng);

    for (auto _ : state) {
        auto x = solve_tridiag(sys, rhs);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void BM_HardStep(benchmark::State& state) {
    const MaterialProps m = ti_like();
    const ProcessParams p = hard_process();
    HardRunConfig cfg;
    cfg.grid = make_grid(static_cast<int>(state.range(0)), p.l);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    const double M = 28.024;
    ThermalState st = hard_initial_state(cfg, m, p);
    st = hard_step(st, cfg, M, m, p);

    for (auto _ : state) {
        ThermalState next = hard_step(st, cfg, M, m, p);
        benchmark::DoNotOptimize(next.T.data());
    }
}

void BM_InnerBvp(benchmark::State& state) {
    for (auto _ : state) {
        auto sol = solve_inner_bvp(1e-8, 30.0);
        benchmark::DoNotOptimize(sol.N);
    }
}

void BM_SoftGradient(benchmark::State& state) {
    const MaterialProps m = ti_like();
    ProcessParams p = hard_process();
    p.model = MaterialModel::soft;
    double T = 400.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ln_soft_gradient(T, m, p));
        T = 400.0 + (T < 900.0 ? T * 1e-3 : 0.0);
    }
}

}  // namespace

BENCHMARK(BM_SolveTridiag)->Arg(201)->Arg(2001)->Arg(10001);
BENCHMARK(BM_HardStep)->Arg(201)->Arg(2001);
BENCHMARK(BM_InnerBvp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SoftGradient);

BENCHMARK_MAIN();
