#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "weldtherm/errors.hpp"
#include "weldtherm/outer_hard.hpp"

using namespace weldtherm;
using fixtures::fig2_material;
using fixtures::fig2_process;
using fixtures::kFig2M;

namespace {

HardRunConfig make_cfg(int n, double dt, double t_end) {
    HardRunConfig cfg;
    cfg.grid = make_grid(n, fig2_process().l);
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.picard_tol = 1e-12;
    return cfg;
}

}  // namespace

TEST_CASE("hard_step: M = 0 reduces to pure diffusion and matches the dense oracle") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    HardRunConfig cfg = make_cfg(41, 0.01, 1.0);
    ThermalState st = hard_initial_state(cfg, m, p);

    ThermalState next = hard_step(st, cfg, 0.0, m, p);
    CHECK(next.V == 0.0);
    const double r = m.diffusivity() * cfg.dt / (cfg.grid.dy * cfg.grid.dy);
    const auto ref = oracles::dense_implicit_diffusion_step(st.T, r, m.T_m, p.T_e);
    for (int i = 0; i < cfg.grid.n; ++i) {
        CHECK(next.T[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    }
}

TEST_CASE("hard_step: one coupled step matches a dense implicit solve with Picard") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    HardRunConfig cfg = make_cfg(61, 0.05, 1.0);
    const double kd = m.diffusivity();

    // advance a few steps so V is nontrivial, then cross-check one more
    ThermalState st = hard_initial_state(cfg, m, p);
    for (int i = 0; i < 5; ++i) st = hard_step(st, cfg, kFig2M, m, p);

    const double r = kd * cfg.dt / (cfg.grid.dy * cfg.grid.dy);
    double V = st.V;
    std::vector<double> ref;
    for (int pic = 0; pic < 60; ++pic) {
        const double q = V * cfg.dt / (2.0 * cfg.grid.dy);
        ref = oracles::dense_implicit_diffusion_step(st.T, r, m.T_m, p.T_e, q);
        const double G = (3.0 * ref[0] - 4.0 * ref[1] + ref[2]) / (2.0 * cfg.grid.dy);
        const double Vn = kFig2M / G;
        if (std::abs(Vn - V) <= 1e-14 * Vn) {
            V = Vn;
            break;
        }
        V = Vn;
    }
    const ThermalState next = hard_step(st, cfg, kFig2M, m, p);
    CHECK(next.V == doctest::Approx(V).epsilon(1e-10));
    for (int i = 0; i < cfg.grid.n; ++i) {
        CHECK(next.T[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    }
}

TEST_CASE("hard_step: error paths") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();

    // Picard cap of one iteration cannot absorb the V update from cold start
    HardRunConfig strict = make_cfg(41, 0.05, 1.0);
    strict.picard_max = 1;
    strict.picard_tol = 1e-14;
    ThermalState st = hard_initial_state(strict, m, p);
    CHECK_THROWS_AS((void)hard_step(st, strict, kFig2M, m, p), SolverError);

    // a state hotter than T_m behind the weld node drives the solved
    // gradient non-positive
    HardRunConfig cfg = make_cfg(41, 1e-7, 1.0);
    ThermalState bad = hard_initial_state(cfg, m, p);
    bad.T[1] = m.T_m + 200.0;
    bad.T[2] = m.T_m + 100.0;
    CHECK_THROWS_AS((void)hard_step(bad, cfg, kFig2M, m, p), SolverError);
}

TEST_CASE("hard_run: long-time state reaches the finite-l steady profile") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;
    const double V_open = std::sqrt(kFig2M * kd / dT);
    const double t_inf = kd / (V_open * V_open);

    HardRunConfig cfg = make_cfg(361, t_inf / 400.0, 10.0 * t_inf);
    cfg.snapshot_times = {10.0 * t_inf};
    const HardRunResult res = hard_run(cfg, m, p, kFig2M);
    REQUIRE(res.snapshots.size() == 1);

    const HardSteady ss = hard_steady(m, p, kFig2M, p.l, cfg.grid.n);
    double worst = 0.0;
    for (int i = 0; i < cfg.grid.n; ++i) {
        worst = std::max(worst, std::abs(res.snapshots[0].T[i] - ss.T[i]));
    }
    CHECK(worst <= 1e-3 * dT);

    // non-local consistency every recorded step
    for (std::size_t i = 1; i < res.series.size(); ++i) {
        CHECK(std::abs(res.series[i].V * res.series[i].G - kFig2M) <= 1e-9 * kFig2M);
    }
    // upset is positive and increasing once motion starts
    CHECK(res.series.back().upset > 0.0);
}

TEST_CASE("hard_run: short-time V follows the sqrt(t) law within 2%") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;

    const int n = 501;
    const Grid1D grid = make_grid(n, p.l);
    const double t20 = std::pow(20.0 * grid.dy / 3.6428, 2) / kd;
    const double t_hi = std::min(100.0 * t20, 0.01 * dT / (kFig2M * std::sqrt(std::numbers::pi)));
    HardRunConfig cfg = make_cfg(n, t20 / 60.0, t_hi);
    const HardRunResult res = hard_run(cfg, m, p, kFig2M);
    double dev = 0.0;
    for (const auto& s : res.series) {
        if (s.t < t20) continue;
        const double law = kFig2M * std::sqrt(std::numbers::pi * kd * s.t) / dT;
        dev = std::max(dev, std::abs(s.V - law) / law);
    }
    CHECK(dev <= 0.02);
}

TEST_CASE("hard_run: heating is pointwise monotone in time") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    HardRunConfig cfg = make_cfg(181, 0.05, 1.0);
    ThermalState st = hard_initial_state(cfg, m, p);
    for (int step = 0; step < 400; ++step) {
        const ThermalState next = hard_step(st, cfg, kFig2M, m, p);
        for (int i = 0; i < cfg.grid.n; ++i) {
            CHECK(next.T[i] >= st.T[i] - 1e-9 * (m.T_m - p.T_e));
        }
        st = next;
    }
}

TEST_CASE("hard_run: monotone approach to the steady profile") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;
    const double t_inf = kd * dT / (kFig2M * kd);  // l_inf^2/kd with V_open

    HardRunConfig cfg = make_cfg(121, t_inf / 50.0, 3.0 * t_inf);
    const HardSteady ss = hard_steady(m, p, kFig2M, p.l, cfg.grid.n);
    ThermalState st = hard_initial_state(cfg, m, p);
    double prev = 1e300;
    double t = 0.0;
    while (t < cfg.t_end) {
        st = hard_step(st, cfg, kFig2M, m, p);
        t += cfg.dt;
        double dist = 0.0;
        for (int i = 0; i < cfg.grid.n; ++i) {
            dist = std::max(dist, std::abs(st.T[i] - ss.T[i]));
        }
        if (t >= 0.1 * t_inf) {
            CHECK(dist <= prev * (1.0 + 1e-12));
            prev = dist;
        }
    }
}

TEST_CASE("hard_run: BTCS and explicit FTCS agree within truncation estimates") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double kd = m.diffusivity();
    const int n = 41;
    const Grid1D grid = make_grid(n, p.l);
    const double dt_e = 0.4 * grid.dy * grid.dy / kd;  // explicit-stable
    const double t_end = 5.0;

    const auto btcs_final = [&](double dt) {
        HardRunConfig cfg = make_cfg(n, dt, t_end);
        cfg.snapshot_times = {t_end};
        return hard_run(cfg, m, p, kFig2M).snapshots.back().T;
    };
    const auto ftcs_final = [&](double dt) {
        std::vector<double> T(n, p.T_e);
        T[0] = m.T_m;
        const long steps = std::lround(t_end / dt);
        for (long s = 0; s < steps; ++s) {
            oracles::ftcs_hard_step(T, dt, grid.dy, kd, kFig2M, m.T_m, p.T_e);
        }
        return T;
    };

    const auto b1 = btcs_final(dt_e), b2 = btcs_final(dt_e / 2.0);
    const auto f1 = ftcs_final(dt_e), f2 = ftcs_final(dt_e / 2.0);
    double diff = 0.0, est_b = 0.0, est_f = 0.0;
    for (int i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(b1[i] - f1[i]));
        est_b = std::max(est_b, 2.0 * std::abs(b1[i] - b2[i]));
        est_f = std::max(est_f, 2.0 * std::abs(f1[i] - f2[i]));
    }
    CHECK(diff <= 2.0 * (est_b + est_f));
}

TEST_CASE("hard_run: spatial convergence order is at least 1.8") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double t_ref = 5.0;
    std::vector<std::vector<double>> sols;
    for (const int n : {46, 91, 181}) {
        const double dt = 0.02 * std::pow(45.0 / (n - 1), 2);
        HardRunConfig cfg = make_cfg(n, dt, t_ref);
        cfg.snapshot_times = {t_ref};
        sols.push_back(hard_run(cfg, m, p, kFig2M).snapshots.back().T);
    }
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < 46; ++i) {
        d1 = std::max(d1, std::abs(sols[0][i] - sols[1][2 * i]));
        d2 = std::max(d2, std::abs(sols[1][2 * i] - sols[2][4 * i]));
    }
    CHECK(std::log2(d1 / d2) >= 1.8);
}

TEST_CASE("hard_run: snapshots land on requested times and series records upset") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    HardRunConfig cfg = make_cfg(61, 0.125, 2.0);
    cfg.snapshot_times = {0.0, 0.5, 2.0};
    const HardRunResult res = hard_run(cfg, m, p, kFig2M);
    REQUIRE(res.snapshots.size() == 3);
    CHECK(res.snapshots[0].t_actual == 0.0);
    CHECK(res.snapshots[1].t_actual == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.snapshots[2].t_actual == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.series.front().t == 0.0);
    CHECK(res.series.front().V == 0.0);
    CHECK(res.series.front().upset == 0.0);
}

TEST_CASE("hard_steady: open-length limit and the Fig. 2 anchor") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;
    const double V_open = std::sqrt(kFig2M * kd / dT);

    const HardSteady far = hard_steady(m, p, kFig2M, 1.0);
    CHECK(far.V_inf == doctest::Approx(V_open).epsilon(1e-12));
    CHECK(far.l_inf == doctest::Approx(0.013).epsilon(3e-3));

    const HardSteady fin = hard_steady(m, p, kFig2M, p.l);
    CHECK(fin.V_inf <= V_open);
    CHECK(fin.V_inf == doctest::Approx(2.865199e-4).epsilon(1e-5));
    const double resid = std::abs(fin.V_inf * fin.V_inf * dT / kd -
                                  kFig2M * (-std::expm1(-fin.V_inf * p.l / kd)));
    CHECK(resid <= 1e-12 * kFig2M);

    // profile hits the boundary values
    CHECK(fin.T.front() == doctest::Approx(m.T_m).epsilon(1e-12));
    CHECK(fin.T.back() == doctest::Approx(p.T_e).epsilon(1e-9));
}

TEST_CASE("hard_short_time: erfc profile, gradient law, and cross-validation") {
    const MaterialProps m = fig2_material();
    const ProcessParams p = fig2_process();
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;

    const std::vector<double> y{0.0, 1e-4, 5e-4, 2e-3};
    const double t = 0.04;
    const ShortTimeProfile prof = hard_short_time(t, y, m, p, kFig2M);
    CHECK(prof.T[0] == doctest::Approx(m.T_m).epsilon(1e-15));
    CHECK(prof.G ==
          doctest::Approx(dT * std::sqrt(1.0 / (std::numbers::pi * kd * t))).epsilon(1e-12));
    CHECK(prof.V == doctest::Approx(kFig2M / prof.G).epsilon(1e-12));
    CHECK_THROWS_AS((void)hard_short_time(0.0, y, m, p, kFig2M), ValidationError);

    // transient run at t = 1e-3 t_inf reproduces the similarity profile
    const double V_open = std::sqrt(kFig2M * kd / dT);
    const double t_inf = kd / (V_open * V_open);
    const double t_cmp = 1e-3 * t_inf;
    const int n = 1201;
    HardRunConfig cfg = make_cfg(n, t_cmp / 1000.0, t_cmp);
    cfg.snapshot_times = {t_cmp};
    const HardRunResult res = hard_run(cfg, m, p, kFig2M);
    std::vector<double> yg(n);
    for (int i = 0; i < n; ++i) yg[i] = cfg.grid.dy * i;
    const ShortTimeProfile ref = hard_short_time(t_cmp, yg, m, p, kFig2M);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double excess = ref.T[i] - p.T_e;
        if (excess < 0.01 * dT) continue;
        worst = std::max(worst, std::abs(res.snapshots[0].T[i] - ref.T[i]) / excess);
    }
    CHECK(worst <= 0.01);
}
