#include "weldtherm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "weldtherm/csv.hpp"
#include "weldtherm/errors.hpp"
#include "weldtherm/inner_layer.hpp"
#include "weldtherm/numerics.hpp"
#include "weldtherm/outer_hard.hpp"
#include "weldtherm/outer_soft.hpp"

namespace weldtherm {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw SolverError("cannot write " + p.string());
    return f;
}

void write_series(const std::filesystem::path& p, const std::vector<SeriesSample>& series) {
    auto f = open_out(p);
    f << "t,T_c,V,G,upset\n";
    for (const auto& s : series) {
        f << format_double(s.t) << ',' << format_double(s.T_c) << ',' << format_double(s.V) << ','
          << format_double(s.G) << ',' << format_double(s.upset) << '\n';
    }
}

void write_profile(const std::filesystem::path& p, const Snapshot& snap, const Grid1D& grid) {
    auto f = open_out(p);
    f << "# t = " << format_double(snap.t_actual) << '\n';
    f << "y,T\n";
    for (int i = 0; i < grid.n; ++i) {
        f << format_double(grid.dy * i) << ',' << format_double(snap.T[i]) << '\n';
    }
}

HardRunConfig hard_config(const RunConfig& cfg) {
    HardRunConfig hc;
    hc.grid = make_grid(cfg.solver.n, cfg.process.l);
    hc.dt = cfg.solver.dt;
    hc.t_end = cfg.solver.t_end;
    hc.picard_tol = cfg.solver.picard_tol;
    hc.picard_max = cfg.solver.picard_max;
    hc.snapshot_times = cfg.solver.snapshots;
    return hc;
}

SoftRunConfig soft_config(const RunConfig& cfg, double N) {
    SoftRunConfig sc;
    sc.grid = make_grid(cfg.solver.n, cfg.process.l);
    sc.dt = cfg.solver.dt;
    sc.t_end = cfg.solver.t_end;
    sc.picard_tol = cfg.solver.picard_tol;
    sc.picard_max = cfg.solver.picard_max;
    sc.newton_tol = cfg.solver.newton_tol;
    sc.newton_max = cfg.solver.newton_max;
    sc.N = N;
    sc.snapshot_times = cfg.solver.snapshots;
    return sc;
}

}  // namespace

double resolve_coupling_constant(const ProcessParams& p) {
    switch (p.n_mode) {
        case CouplingMode::computed_from_bvp:
            return solve_inner_bvp().N;
        case CouplingMode::decoupling_constant:
            return soft_decoupling_N();
        case CouplingMode::asymptotic_constant:
            return soft_asymptotic_N();
    }
    throw ValidationError("unknown N_mode");
}

RunArtifacts run(const RunConfig& cfg, const std::optional<std::filesystem::path>& out_override) {
    cfg.material.validate();
    cfg.process.validate(cfg.material);

    const std::filesystem::path dir = out_override.value_or(cfg.out_dir);
    std::filesystem::create_directories(dir);

    RunArtifacts art;
    art.N = resolve_coupling_constant(cfg.process);
    art.scales = compute_scales(cfg.material, cfg.process, art.N);
    const Grid1D grid = make_grid(cfg.solver.n, cfg.process.l);

    std::vector<Snapshot> snapshots;
    std::vector<SeriesSample> series;
    double steady_V = 0.0;
    double steady_Tc = 0.0;
    std::vector<double> steady_y, steady_T;

    if (cfg.process.model == MaterialModel::hard) {
        HardRunResult r = hard_run(hard_config(cfg), cfg.material, cfg.process, art.scales.M);
        snapshots = std::move(r.snapshots);
        series = std::move(r.series);
        if (cfg.emit.steady) {
            HardSteady hs = hard_steady(cfg.material, cfg.process, art.scales.M, cfg.process.l);
            steady_V = hs.V_inf;
            steady_Tc = cfg.material.T_m;
            steady_y = std::move(hs.y);
            steady_T = std::move(hs.T);
        }
    } else {
        SoftRunResult r = soft_run(soft_config(cfg, art.N), cfg.material, cfg.process);
        snapshots = std::move(r.snapshots);
        series = std::move(r.series);
        if (cfg.emit.steady) {
            SoftSteady ss = soft_steady(cfg.material, cfg.process, art.N);
            steady_V = ss.V_inf;
            steady_Tc = ss.T_inf;
            steady_y.resize(grid.n);
            for (int i = 0; i < grid.n; ++i) steady_y[i] = grid.dy * i;
            steady_T = soft_steady_profile(ss, cfg.material, cfg.process, steady_y);
        }
    }

    if (cfg.emit.series) {
        const auto p = dir / "series.csv";
        write_series(p, series);
        art.files.push_back(p);
    }
    if (cfg.emit.profiles) {
        for (const auto& snap : snapshots) {
            const auto p = dir / ("profile_" + format_double(snap.t_request) + ".csv");
            write_profile(p, snap, grid);
            art.files.push_back(p);
        }
    }
    if (cfg.emit.scales) {
        const auto p = dir / "scales.csv";
        auto f = open_out(p);
        f << "quantity,value\n";
        const auto& s = art.scales;
        f << "V_E," << format_double(s.V_E) << '\n';
        f << "S," << format_double(s.S) << '\n';
        f << "h," << format_double(s.h) << '\n';
        f << "delta," << format_double(s.delta) << '\n';
        f << "G_E," << format_double(s.G_E) << '\n';
        f << "M," << format_double(s.M) << '\n';
        f << "V_inf," << format_double(s.V_inf) << '\n';
        f << "l_inf," << format_double(s.l_inf) << '\n';
        f << "t_inf," << format_double(s.t_inf) << '\n';
        f << "N," << format_double(art.N) << '\n';
        art.files.push_back(p);
    }
    if (cfg.emit.inner) {
        const InnerSolution sol = solve_inner_bvp();
        const auto p = dir / "inner.csv";
        auto f = open_out(p);
        f << "# N = " << format_double(sol.N) << '\n';
        f << "# phi0 = " << format_double(sol.phi0) << '\n';
        f << "# c_inf = " << format_double(sol.c_inf) << '\n';
        f << "eta,phi\n";
        for (std::size_t i = 0; i < sol.eta.size(); ++i) {
            f << format_double(sol.eta[i]) << ',' << format_double(sol.phi[i]) << '\n';
        }
        art.files.push_back(p);
    }
    if (cfg.emit.steady) {
        const auto p = dir / "steady.csv";
        auto f = open_out(p);
        f << "# V_inf = " << format_double(steady_V) << '\n';
        f << "# T_c = " << format_double(steady_Tc) << '\n';
        f << "y,T\n";
        for (std::size_t i = 0; i < steady_y.size(); ++i) {
            f << format_double(steady_y[i]) << ',' << format_double(steady_T[i]) << '\n';
        }
        art.files.push_back(p);
    }
    return art;
}

bool VerifyReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

namespace {

// ---- verify rows -----------------------------------------------------

VerifyRow row_bound(std::string name, double measured, double bound, std::string note = {}) {
    VerifyRow r;
    r.name = std::move(name);
    r.measured = measured;
    r.expected = 0.0;
    r.tolerance = bound;
    r.pass = std::isfinite(measured) && measured <= bound;
    r.note = std::move(note);
    return r;
}

VerifyRow row_match(std::string name, double measured, double expected, double rel_tol,
                    std::string note = {}) {
    VerifyRow r;
    r.name = std::move(name);
    r.measured = measured;
    r.expected = expected;
    r.tolerance = rel_tol * std::abs(expected);
    r.pass = std::isfinite(measured) && std::abs(measured - expected) <= r.tolerance;
    r.note = std::move(note);
    return r;
}

void inner_rows(VerifyReport& rep) {
    const InnerSolution sol = solve_inner_bvp();
    double drift = 0.0;
    const double E0 = 1.0 / (3.0 * sol.phi0 * sol.phi0 * sol.phi0);
    for (std::size_t i = 0; i < sol.eta.size(); ++i) {
        const double E = 0.5 * sol.dphi[i] * sol.dphi[i] +
                         1.0 / (3.0 * sol.phi[i] * sol.phi[i] * sol.phi[i]);
        drift = std::max(drift, std::abs(E - E0) / E0);
    }
    rep.rows.push_back(row_bound("inner_first_integral_drift", drift, 1e-6));
    const InnerSolution wide = solve_inner_bvp(1e-10, 2.0 * sol.eta_max);
    rep.rows.push_back(
        row_bound("inner_n_stability", std::abs(wide.N - sol.N) / sol.N, 1e-3,
                  "N = " + format_double(sol.N)));
}

void convergence_row(VerifyReport& rep, const RunConfig& cfg, double t_inf, bool hard, double N) {
    const int n1 = cfg.solver.n;
    const double t_conv = 0.02 * t_inf;
    std::vector<std::vector<double>> sols;
    for (int level = 0; level < 3; ++level) {
        const int scale = 1 << level;
        const int n = scale * (n1 - 1) + 1;
        const double dt = 1e-3 * t_inf / (scale * scale);
        if (hard) {
            HardRunConfig hc = hard_config(cfg);
            hc.grid = make_grid(n, cfg.process.l);
            hc.dt = dt;
            hc.t_end = t_conv;
            hc.snapshot_times = {t_conv};
            const auto res = hard_run(hc, cfg.material, cfg.process,
                                      compute_scales(cfg.material, cfg.process, N).M);
            sols.push_back(res.snapshots.back().T);
        } else {
            SoftRunConfig sc = soft_config(cfg, N);
            sc.grid = make_grid(n, cfg.process.l);
            sc.dt = dt;
            sc.t_end = t_conv;
            sc.snapshot_times = {t_conv};
            const auto res = soft_run(sc, cfg.material, cfg.process);
            sols.push_back(res.snapshots.back().T);
        }
    }
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < n1; ++i) {
        d1 = std::max(d1, std::abs(sols[0][i] - sols[1][2 * i]));
        d2 = std::max(d2, std::abs(sols[1][2 * i] - sols[2][4 * i]));
    }
    const double order = std::log2(d1 / d2);
    VerifyRow r;
    r.name = "grid_convergence_order";
    r.measured = order;
    r.expected = 2.0;
    r.tolerance = 0.2;
    r.pass = std::isfinite(order) && order >= 1.8;
    rep.rows.push_back(r);
}

void hard_rows(VerifyReport& rep, const RunConfig& cfg) {
    const MaterialProps& m = cfg.material;
    const ProcessParams& p = cfg.process;
    const double N = resolve_coupling_constant(p);
    const DerivedScales sc = compute_scales(m, p, N);
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;

    inner_rows(rep);

    // steady closure residual and length scale
    {
        const HardSteady hs = hard_steady(m, p, sc.M, p.l);
        const double resid =
            std::abs(hs.V_inf * hs.V_inf * dT / kd - sc.M * (-std::expm1(-hs.V_inf * p.l / kd))) /
            sc.M;
        rep.rows.push_back(row_bound("steady_closure_residual", resid, 1e-12));
        const HardSteady open = hard_steady(m, p, sc.M, 60.0 * sc.l_inf);
        rep.rows.push_back(row_match("steady_length_scale", open.l_inf, sc.l_inf, 1e-6,
                                     "l_inf = " + format_double(sc.l_inf) + " m"));
    }

    // short-time V law on the config grid
    {
        const Grid1D grid = make_grid(cfg.solver.n, p.l);
        const double t20 = std::pow(20.0 * grid.dy / 3.6428, 2) / kd;
        const double t200 = 100.0 * t20;
        const double t_hi =
            std::min({t200, std::pow(p.l / 6.0 / 3.6428, 2) / kd,
                      0.01 * dT / (sc.M * std::sqrt(std::numbers::pi))});
        if (t20 >= t_hi) {
            VerifyRow r;
            r.name = "short_time_v_law";
            r.measured = std::numeric_limits<double>::quiet_NaN();
            r.pass = false;
            r.note = "window unresolved on this grid";
            rep.rows.push_back(r);
        } else {
            HardRunConfig hc = hard_config(cfg);
            hc.dt = t20 / 60.0;
            hc.t_end = t_hi;
            hc.snapshot_times.clear();
            const HardRunResult res = hard_run(hc, m, p, sc.M);
            double dev = 0.0;
            for (const auto& s : res.series) {
                if (s.t < t20 || s.t > t_hi) continue;
                const double law = sc.M * std::sqrt(std::numbers::pi * kd * s.t) / dT;
                dev = std::max(dev, std::abs(s.V - law) / law);
            }
            rep.rows.push_back(row_bound("short_time_v_law", dev, 0.02, "V ~ sqrt(t)"));
        }
    }

    // transient consistency of the non-local coupling and the range bound
    {
        HardRunConfig hc = hard_config(cfg);
        hc.t_end = std::min(cfg.solver.t_end, std::min(sc.t_inf, 2000.0 * hc.dt));
        hc.snapshot_times.clear();
        const HardRunResult res = hard_run(hc, m, p, sc.M);
        double nl = 0.0, range = 0.0;
        for (std::size_t i = 1; i < res.series.size(); ++i) {
            const auto& s = res.series[i];
            nl = std::max(nl, std::abs(s.V * s.G - sc.M) / sc.M);
        }
        for (const auto& snap : res.series) {
            range = std::max(range, std::max(snap.T_c - m.T_m, p.T_e - snap.T_c));
        }
        rep.rows.push_back(row_bound("transient_nonlocal_consistency", nl, 1e-9));
        rep.rows.push_back(row_bound("transient_range_bound", std::max(range, 0.0), 1e-9 * dT));
    }

    convergence_row(rep, cfg, sc.t_inf, true, N);
}

void soft_rows(VerifyReport& rep, const RunConfig& cfg) {
    const MaterialProps& m = cfg.material;
    const ProcessParams& p = cfg.process;
    const double N = resolve_coupling_constant(p);
    const double kd = m.diffusivity();

    const SoftSteady ss = soft_steady(m, p, N);

    // steady residuals of the boundary closure and the velocity relation
    {
        const double alpha = ss.V_inf / kd;
        const double G_ode = alpha * (ss.T_inf - p.T_e) / (-std::expm1(-alpha * p.l));
        const double r1 = std::abs(G_ode - ss.G_inf) / ss.G_inf;
        const double V2 = std::exp(
            ln_soft_velocity(ss.T_inf, std::log(ss.G_inf), N, m, p));
        const double r2 = std::abs(V2 - ss.V_inf) / ss.V_inf;
        rep.rows.push_back(row_bound("steady_residuals", std::max(r1, r2), 1e-10,
                                     "T_inf = " + format_double(ss.T_inf) + " K"));
    }

    // transient closure / non-local consistency / range on the config grid
    {
        SoftRunConfig sc = soft_config(cfg, N);
        sc.t_end = std::min(cfg.solver.t_end, std::min(ss.t_inf, 2000.0 * sc.dt));
        sc.snapshot_times.clear();
        const SoftRunResult res = soft_run(sc, m, p);
        double closure = 0.0, nl = 0.0, range = 0.0;
        for (std::size_t i = 1; i < res.series.size(); ++i) {
            const auto& s = res.series[i];
            const double g = soft_gradient(s.T_c, m, p);
            closure = std::max(closure, std::abs(s.G - g) / g);
            const double M_T = N * p.P * p.U_e * p.U_e * std::pow(s.T_c, 4) / (m.k * m.T_a * p.L * p.L);
            nl = std::max(nl, std::abs(s.V * s.G * s.G * s.G - M_T) / M_T);
            range = std::max(range, std::max(s.T_c - m.T_m, p.T_e - s.T_c));
        }
        rep.rows.push_back(row_bound("boundary_closure", closure, 1e-8));
        rep.rows.push_back(row_bound("transient_nonlocal_consistency", nl, 1e-9));
        rep.rows.push_back(
            row_bound("transient_range_bound", std::max(range, 0.0), 1e-9 * (m.T_m - p.T_e)));
    }

    // stage chain: similarity (i) vs rescaled PDE (ii) vs the full transient
    {
        const StageIIScales st = stage_ii_scales(m, p);
        VerifyRow r;
        r.name = "stage_chain";
        if (!std::isfinite(st.y_scale) || !std::isfinite(st.t_scale) || st.y_scale <= 0.0 ||
            st.t_scale <= 0.0) {
            r.measured = std::numeric_limits<double>::quiet_NaN();
            r.pass = false;
            r.note = "stage scales out of double range";
        } else {
            double dev = 0.0;
            // (i) vs (ii) at small tau
            StageIIConfig s2f;
            s2f.tau_end = 2.5e-4;
            s2f.dtau = 5e-7;
            s2f.n = 1901;
            s2f.Y_max = 6.0 * std::sqrt(2e-3);
            const StageIIResult early = stage_ii_solve(s2f);
            const auto phi0_at = [&](const StageIIResult& sr, double tau) {
                const auto it = std::lower_bound(sr.tau_series.begin(), sr.tau_series.end(),
                                                 tau * (1.0 - 1e-9));
                return sr.varphi0_series[it - sr.tau_series.begin()];
            };
            for (const double tau : {1e-4, 2e-4}) {
                const double ref = 2.0 * std::numbers::inv_sqrtpi * std::sqrt(tau);
                dev = std::max(dev, std::abs(phi0_at(early, tau) - ref) / ref);
            }
            // full soft run at the stage scale, fine then coarse
            SoftRunConfig fine = soft_config(cfg, N);
            fine.grid = make_grid(10001, 10.0 * st.y_scale);
            fine.dt = 5e-7 * st.t_scale;
            fine.t_end = 2.5e-4 * st.t_scale;
            fine.snapshot_times.clear();
            const SoftRunResult runA = soft_run(fine, m, p);
            const auto Tc_at = [&](const SoftRunResult& sr, double t) {
                for (const auto& s : sr.series) {
                    if (s.t >= t * (1.0 - 1e-9)) return s.T_c;
                }
                return sr.series.back().T_c;
            };
            const double a_sim = std::sqrt(kd) * soft_gradient(p.T_e, m, p);
            for (const double tau : {1e-4, 2e-4}) {
                const double t = tau * st.t_scale;
                const double sim = a_sim * std::sqrt(t) * 2.0 * std::numbers::inv_sqrtpi;
                dev = std::max(dev, std::abs((Tc_at(runA, t) - p.T_e) - sim) / sim);
            }
            // (ii) vs full at moderate tau
            StageIIConfig s2c;
            s2c.tau_end = 0.05;
            s2c.dtau = 2e-5;
            s2c.n = 1901;
            s2c.Y_max = 6.0 * std::sqrt(0.06);
            const StageIIResult late = stage_ii_solve(s2c);
            SoftRunConfig coarse = soft_config(cfg, N);
            coarse.grid = make_grid(3001, 10.0 * st.y_scale);
            coarse.dt = 2e-5 * st.t_scale;
            coarse.t_end = 0.05 * st.t_scale;
            coarse.snapshot_times.clear();
            const SoftRunResult runB = soft_run(coarse, m, p);
            const double theta_scale = st.temp_scale;
            for (const double tau : {0.02, 0.05}) {
                const double d_ii = theta_scale * phi0_at(late, tau);
                const double d_full = Tc_at(runB, tau * st.t_scale) - p.T_e;
                dev = std::max(dev, std::abs(d_full - d_ii) / d_ii);
            }
            r.measured = dev;
            r.expected = 0.0;
            r.tolerance = 0.02;
            r.pass = std::isfinite(dev) && dev <= 0.02;
        }
        rep.rows.push_back(r);
    }

    convergence_row(rep, cfg, ss.t_inf, false, N);
}

}  // namespace

VerifyReport verify(const RunConfig& cfg) {
    cfg.material.validate();
    cfg.process.validate(cfg.material);
    VerifyReport rep;
    if (cfg.process.model == MaterialModel::hard) {
        hard_rows(rep, cfg);
    } else {
        soft_rows(rep, cfg);
    }
    std::stable_sort(rep.rows.begin(), rep.rows.end(),
                     [](const VerifyRow& a, const VerifyRow& b) { return a.name < b.name; });
    return rep;
}

void print_report(const VerifyReport& rep, std::ostream& os) {
    for (const auto& r : rep.rows) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  measured=" << format_double(r.measured);
        if (r.expected != 0.0) os << "  expected=" << format_double(r.expected);
        os << "  tol=" << format_double(r.tolerance);
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << '\n';
    }
    os << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << '\n';
}

}  // namespace weldtherm
