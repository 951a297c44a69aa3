#include "weldtherm/outer_hard.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weldtherm/errors.hpp"
#include "weldtherm/numerics.hpp"

namespace weldtherm {

namespace {

double boundary_gradient(std::span<const double> T, double dy) {
    return (3.0 * T[0] - 4.0 * T[1] + T[2]) / (2.0 * dy);
}

void check_range(std::span<const double> T, double T_e, double T_m) {
    const double slack = 1e-9 * (T_m - T_e);
    for (const double v : T) {
        if (v < T_e - slack || v > T_m + slack) {
            throw SolverError("hard_step: temperature left [T_e, T_m] (maximum principle)");
        }
    }
}

}  // namespace

void HardRunConfig::validate() const {
    if (grid.n < 3) throw ValidationError("solver grid must have n >= 3");
    if (!(dt > 0.0)) throw ValidationError("solver.dt must be > 0");
    if (!(t_end >= 0.0)) throw ValidationError("solver.t_end must be >= 0");
    if (!(picard_tol > 0.0 && picard_tol < 1.0)) {
        throw ValidationError("solver.picard_tol must lie in (0, 1)");
    }
    if (picard_max < 1) throw ValidationError("solver.picard_max must be >= 1");
    for (const double s : snapshot_times) {
        if (s < 0.0 || s > t_end * (1.0 + 1e-12)) {
            throw ValidationError("solver.snapshots must lie within [0, t_end]");
        }
    }
}

ThermalState hard_initial_state(const HardRunConfig& cfg, const MaterialProps& m,
                                const ProcessParams& p) {
    ThermalState st;
    st.t = 0.0;
    st.T.assign(cfg.grid.n, p.T_e);
    st.T[0] = m.T_m;
    st.V = 0.0;  // G is unbounded at t = 0; V = M/G is defined as zero
    st.G = boundary_gradient(st.T, cfg.grid.dy);
    return st;
}

namespace detail {

ThermalState hard_step_dt(const ThermalState& state, const HardRunConfig& cfg, double M,
                          const MaterialProps& m, const ProcessParams& p, double dt) {
    const int n = cfg.grid.n;
    const double dy = cfg.grid.dy;
    const double kd = m.diffusivity();
    const double r = kd * dt / (dy * dy);

    Tridiag sys;
    sys.lower.assign(n, 0.0);
    sys.diag.assign(n, 1.0);
    sys.upper.assign(n, 0.0);
    std::vector<double> rhs(state.T.begin(), state.T.end());
    rhs[0] = m.T_m;
    rhs[n - 1] = p.T_e;

    double V = state.V;
    std::vector<double> T_new;
    double G = 0.0;
    bool converged = false;
    for (int it = 0; it < cfg.picard_max; ++it) {
        const double peclet = V * dy / kd;
        if (peclet > 2.0) {
            throw SolverError("hard_step: cell Peclet number " + std::to_string(peclet) +
                              " exceeds 2; refine the grid");
        }
        const double q = V * dt / (2.0 * dy);
        for (int i = 1; i < n - 1; ++i) {
            sys.lower[i] = -(r - q);
            sys.diag[i] = 1.0 + 2.0 * r;
            sys.upper[i] = -(r + q);
        }
        T_new = solve_tridiag(sys, rhs);
        G = boundary_gradient(T_new, dy);
        if (!(G > 0.0)) {
            throw SolverError("hard_step: non-positive boundary gradient; V undefined");
        }
        const double V_next = M / G;
        const bool done = std::abs(V_next - V) <= cfg.picard_tol * std::max(std::abs(V_next), 1e-300);
        V = V_next;
        if (done) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw SolverError("hard_step: Picard iteration on V did not converge");
    }
    check_range(T_new, p.T_e, m.T_m);

    ThermalState out;
    out.t = state.t + dt;
    out.T = std::move(T_new);
    out.V = V;
    out.G = G;
    return out;
}

}  // namespace detail

ThermalState hard_step(const ThermalState& state, const HardRunConfig& cfg, double M,
                       const MaterialProps& m, const ProcessParams& p) {
    cfg.validate();
    if (static_cast<int>(state.T.size()) != cfg.grid.n) {
        throw ValidationError("hard_step: state size does not match grid");
    }
    return detail::hard_step_dt(state, cfg, M, m, p, cfg.dt);
}

HardRunResult hard_run(const HardRunConfig& cfg, const MaterialProps& m, const ProcessParams& p,
                       double M) {
    cfg.validate();
    m.validate();
    p.validate(m);

    HardRunResult res;
    ThermalState st = hard_initial_state(cfg, m, p);
    std::vector<double> snaps = cfg.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    const auto maybe_snapshot = [&]() {
        while (next_snap < snaps.size() && st.t >= snaps[next_snap] - 1e-9 * cfg.dt) {
            res.snapshots.push_back(Snapshot{snaps[next_snap], st.t, st.T});
            ++next_snap;
        }
    };

    double upset = 0.0;
    res.series.push_back(SeriesSample{st.t, st.T[0], st.V, st.G, upset});
    maybe_snapshot();

    double t = 0.0;
    while (t < cfg.t_end) {
        const bool last = (cfg.t_end - t) <= cfg.dt;
        const double h = last ? cfg.t_end - t : cfg.dt;
        const double V_prev = st.V;
        st = detail::hard_step_dt(st, cfg, M, m, p, h);
        t = last ? cfg.t_end : t + h;
        st.t = t;
        upset += 0.5 * (V_prev + st.V) * h;
        res.series.push_back(SeriesSample{st.t, st.T[0], st.V, st.G, upset});
        maybe_snapshot();
    }
    return res;
}

HardSteady hard_steady(const MaterialProps& m, const ProcessParams& p, double M, double l,
                       int n_samples) {
    m.validate();
    p.validate(m);
    if (!(M > 0.0)) throw ValidationError("hard_steady: M must be > 0");
    if (!(l > 0.0)) throw ValidationError("hard_steady: l must be > 0");
    if (n_samples < 2) throw ValidationError("hard_steady: n_samples must be >= 2");

    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;
    const double V_open = std::sqrt(M * kd / dT);  // l -> inf limit
    const auto resid = [&](double V) {
        return V * V * dT / kd - M * (-std::expm1(-V * l / kd));
    };
    const double lo = V_open * 1e-9, hi = V_open * (1.0 + 1e-9);
    const double V = find_root(resid, make_bracket(resid, lo, hi), V_open * 1e-15);

    HardSteady out;
    out.V_inf = V;
    out.l_inf = kd / V;
    out.t_inf = out.l_inf * out.l_inf / kd;
    out.y.resize(n_samples);
    out.T.resize(n_samples);
    const double alpha = V / kd;
    const double denom = -std::expm1(-alpha * l);
    for (int i = 0; i < n_samples; ++i) {
        const double y = l * i / (n_samples - 1);
        out.y[i] = y;
        out.T[i] = p.T_e + dT * (std::exp(-alpha * y) - std::exp(-alpha * l)) / denom;
    }
    return out;
}

ShortTimeProfile hard_short_time(double t, std::span<const double> y, const MaterialProps& m,
                                 const ProcessParams& p, double M) {
    if (!(t > 0.0)) throw ValidationError("hard_short_time: t must be > 0");
    const double kd = m.diffusivity();
    const double dT = m.T_m - p.T_e;
    const double root = 2.0 * std::sqrt(kd * t);

    ShortTimeProfile out;
    out.T.reserve(y.size());
    for (const double yi : y) {
        out.T.push_back(p.T_e + dT * std::erfc(yi / root));
    }
    out.G = dT / std::sqrt(std::numbers::pi * kd * t);
    out.V = M * std::sqrt(std::numbers::pi * kd * t) / dT;
    return out;
}

}  // namespace weldtherm
