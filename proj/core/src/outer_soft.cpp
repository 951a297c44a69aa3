#include "weldtherm/outer_soft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weldtherm/errors.hpp"
#include "weldtherm/inner_layer.hpp"
#include "weldtherm/numerics.hpp"

namespace weldtherm {

namespace {

// d ln(soft_gradient)/d T_c
double dln_gradient(double T, const MaterialProps& m) {
    return -(4.0 / 3.0) / (m.T_m - T) - (2.0 / 3.0) / T - (4.0 / 3.0) * m.T_a / (T * T);
}

// Interior BTCS solve split into T0-independent and T0-proportional parts:
// T_i = base[i] + slope_part[i] * T0 for the interior nodes.
struct AffineInterior {
    std::vector<double> base;
    std::vector<double> prop;
    double grad_slope;   // d(G_disc)/d(T0)
    double grad_inter;   // G_disc at T0 = 0
};

AffineInterior interior_solve(std::span<const double> T_old, double r, double q, double dy,
                              double T_far) {
    const std::size_t n = T_old.size();
    const std::size_t nin = n - 2;
    Tridiag sys;
    sys.lower.assign(nin, -(r - q));
    sys.diag.assign(nin, 1.0 + 2.0 * r);
    sys.upper.assign(nin, -(r + q));
    std::vector<double> rhs(T_old.begin() + 1, T_old.end() - 1);
    rhs[nin - 1] += (r + q) * T_far;

    AffineInterior a;
    a.base = solve_tridiag(sys, rhs);
    std::vector<double> e0(nin, 0.0);
    e0[0] = r - q;
    a.prop = solve_tridiag(sys, e0);
    a.grad_slope = (3.0 - 4.0 * a.prop[0] + a.prop[1]) / (2.0 * dy);
    a.grad_inter = (-4.0 * a.base[0] + a.base[1]) / (2.0 * dy);
    return a;
}

}  // namespace

void SoftRunConfig::validate() const {
    if (grid.n < 3) throw ValidationError("solver grid must have n >= 3");
    if (!(dt > 0.0)) throw ValidationError("solver.dt must be > 0");
    if (!(t_end >= 0.0)) throw ValidationError("solver.t_end must be >= 0");
    if (!(picard_tol > 0.0 && picard_tol < 1.0)) {
        throw ValidationError("solver.picard_tol must lie in (0, 1)");
    }
    if (picard_max < 1) throw ValidationError("solver.picard_max must be >= 1");
    if (!(newton_tol > 0.0 && newton_tol < 1.0)) {
        throw ValidationError("solver.newton_tol must lie in (0, 1)");
    }
    if (newton_max < 1) throw ValidationError("solver.newton_max must be >= 1");
    if (!(N > 0.0)) throw ValidationError("coupling constant N must be > 0");
    for (const double s : snapshot_times) {
        if (s < 0.0 || s > t_end * (1.0 + 1e-12)) {
            throw ValidationError("solver.snapshots must lie within [0, t_end]");
        }
    }
}

ThermalState soft_initial_state(const SoftRunConfig& cfg, const MaterialProps&,
                                const ProcessParams& p) {
    ThermalState st;
    st.t = 0.0;
    st.T.assign(cfg.grid.n, p.T_e);
    st.V = 0.0;
    st.G = 0.0;
    return st;
}

namespace detail {

ThermalState soft_step_dt(const ThermalState& state, const SoftRunConfig& cfg,
                          const MaterialProps& m, const ProcessParams& p, double dt) {
    const int n = cfg.grid.n;
    const double dy = cfg.grid.dy;
    const double kd = m.diffusivity();
    const double r = kd * dt / (dy * dy);
    const double melt_guard = m.T_m * (1.0 - 1e-12);
    // the (1 - T/T_m) factor in the closure is meaningless this close to
    // melting; treat it as leaving the soft regime
    const double melt_trigger = m.T_m - 1e-6 * (m.T_m - p.T_e);

    double V = state.V;
    double T0 = std::max(state.T[0], p.T_e);
    std::vector<double> T_new;
    double G = 0.0;
    bool converged = false;
    for (int it = 0; it < cfg.picard_max; ++it) {
        const double peclet = V * dy / kd;
        if (peclet > 2.0) {
            throw SolverError("soft_step: cell Peclet number exceeds 2; refine the grid");
        }
        const double q = V * dt / (2.0 * dy);
        const AffineInterior af = interior_solve(state.T, r, q, dy, p.T_e);

        // Nonlinear flux closure at the weld node: G_disc(T0) = soft_gradient(T0).
        // Damped Newton; steps over the cap use bracketed bisection instead,
        // which keeps cold starts with dt far above the stage scales convergent.
        double lo = p.T_e - 1.0, hi = melt_guard;
        const double cap = 0.25 * p.T_e * p.T_e / m.T_a;
        bool newton_ok = false;
        T0 = std::clamp(T0, lo + 1e-12, hi - 1e-12);
        for (int nw = 0; nw < cfg.newton_max; ++nw) {
            const double g = soft_gradient(T0, m, p);
            const double R = af.grad_slope * T0 + af.grad_inter - g;
            if (std::abs(R) <= cfg.newton_tol * g) {
                newton_ok = true;
                break;
            }
            if (R > 0.0) {
                hi = std::min(hi, T0);
            } else {
                lo = std::max(lo, T0);
            }
            if (lo >= melt_trigger) {
                throw SolverError("soft_step: T_c reached T_m; soft-layer model breakdown");
            }
            const double dR = af.grad_slope - g * dln_gradient(T0, m);
            double step = dR != 0.0 ? -R / dR : cap;
            double cand = T0 + step;
            if (std::abs(step) > cap || !(cand > lo) || !(cand < hi)) {
                cand = 0.5 * (lo + hi);
            }
            T0 = cand;
        }
        if (!newton_ok) {
            throw SolverError("soft_step: Newton on the boundary closure did not converge");
        }
        if (T0 >= melt_guard - 1e-9 * (m.T_m - p.T_e)) {
            throw SolverError("soft_step: T_c reached T_m; soft-layer model breakdown");
        }

        T_new.assign(n, p.T_e);
        T_new[0] = T0;
        for (int i = 1; i < n - 1; ++i) T_new[i] = af.base[i - 1] + af.prop[i - 1] * T0;
        G = (3.0 * T_new[0] - 4.0 * T_new[1] + T_new[2]) / (2.0 * dy);
        if (!(G > 0.0)) {
            throw SolverError("soft_step: non-positive boundary gradient");
        }
        const double V_next = std::exp(ln_soft_velocity(T0, std::log(G), cfg.N, m, p));
        const bool done =
            std::abs(V_next - V) <= cfg.picard_tol * std::max(std::abs(V_next), 1e-300);
        V = V_next;
        if (done) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw SolverError("soft_step: Picard iteration on V did not converge");
    }
    const double slack = 1e-9 * (m.T_m - p.T_e);
    for (const double v : T_new) {
        if (v < p.T_e - slack || v > m.T_m + slack) {
            throw SolverError("soft_step: temperature left [T_e, T_m]");
        }
    }

    ThermalState out;
    out.t = state.t + dt;
    out.T = std::move(T_new);
    out.V = V;
    out.G = G;
    return out;
}

}  // namespace detail

ThermalState soft_step(const ThermalState& state, const SoftRunConfig& cfg,
                       const MaterialProps& m, const ProcessParams& p) {
    cfg.validate();
    if (static_cast<int>(state.T.size()) != cfg.grid.n) {
        throw ValidationError("soft_step: state size does not match grid");
    }
    return detail::soft_step_dt(state, cfg, m, p, cfg.dt);
}

SoftRunResult soft_run(const SoftRunConfig& cfg, const MaterialProps& m,
                       const ProcessParams& p) {
    cfg.validate();
    m.validate();
    p.validate(m);

    SoftRunResult res;
    ThermalState st = soft_initial_state(cfg, m, p);
    std::vector<double> snaps = cfg.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    const double handoff_T = m.T_m - 5.0 * m.T_m * m.T_m / m.T_a;
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
        st = detail::soft_step_dt(st, cfg, m, p, h);
        t = last ? cfg.t_end : t + h;
        st.t = t;
        upset += 0.5 * (V_prev + st.V) * h;
        res.series.push_back(SeriesSample{st.t, st.T[0], st.V, st.G, upset});
        if (!res.hard_handoff_flagged && handoff_T > p.T_e && st.T[0] > handoff_T) {
            res.hard_handoff_flagged = true;
            res.t_handoff = st.t;
        }
        maybe_snapshot();
    }
    return res;
}

SoftSteady soft_steady(const MaterialProps& m, const ProcessParams& p, double N) {
    m.validate();
    p.validate(m);
    if (!(N > 0.0)) throw ValidationError("soft_steady: N must be > 0");

    const double kd = m.diffusivity();
    const auto resid = [&](double T) {
        const double ln_g = ln_soft_gradient(T, m, p);
        const double V = std::exp(ln_soft_velocity(T, ln_g, N, m, p));
        const double alpha = V / kd;
        const double G_ode = alpha * (T - p.T_e) / (-std::expm1(-alpha * p.l));
        return std::log(G_ode) - ln_g;
    };
    const double lo = p.T_e + 1.0, hi = m.T_m - 1.0;
    const double f_lo = resid(lo), f_hi = resid(hi);
    if (!(f_lo * f_hi <= 0.0)) {
        throw SolverError(
            "soft_steady: no equilibrium in [T_e + 1 K, T_m - 1 K]; parameters are outside "
            "the soft-model regime");
    }
    const double T_inf = find_root(resid, RootBracket{lo, hi, f_lo, f_hi},
                                   (m.T_m - p.T_e) * 1e-13, 300);

    SoftSteady st;
    st.T_inf = T_inf;
    const double ln_g = ln_soft_gradient(T_inf, m, p);
    st.G_inf = std::exp(ln_g);
    st.V_inf = std::exp(ln_soft_velocity(T_inf, ln_g, N, m, p));
    st.l_inf = kd / st.V_inf;
    st.t_inf = st.l_inf * st.l_inf / kd;
    return st;
}

std::vector<double> soft_steady_profile(const SoftSteady& st, const MaterialProps& m,
                                        const ProcessParams& p, std::span<const double> y) {
    const double alpha = st.V_inf / m.diffusivity();
    const double denom = -std::expm1(-alpha * p.l);
    std::vector<double> T;
    T.reserve(y.size());
    for (const double yi : y) {
        T.push_back(p.T_e +
                    (st.T_inf - p.T_e) * (std::exp(-alpha * yi) - std::exp(-alpha * p.l)) / denom);
    }
    return T;
}

double stage_i_f(double eta) {
    const double s = std::numbers::inv_sqrtpi;  // 1/sqrt(pi)
    return 2.0 * s * std::exp(-0.25 * eta * eta) - eta * std::erfc(0.5 * eta);
}

double stage_i_df(double eta) { return -std::erfc(0.5 * eta); }

StageIResult stage_i_profile(double t, std::span<const double> y, const MaterialProps& m,
                             const ProcessParams& p) {
    if (!(t > 0.0)) throw ValidationError("stage_i_profile: t must be > 0");
    const double kd = m.diffusivity();
    const double ln_Ge = ln_soft_gradient(p.T_e, m, p);
    const double G_e = std::exp(ln_Ge);

    StageIResult out;
    out.G_e = G_e;
    out.a = std::sqrt(kd) * G_e;
    // stage expires when T_c - T_e reaches O(T_e^2/T_a)
    const double ln_G0 = ln_Ge - (4.0 / 3.0) * (m.T_a / p.T_e - m.T_a / m.T_m);
    out.t_validity = std::exp(std::log(p.T_e * p.T_e * p.T_e * p.T_e / (kd * m.T_a * m.T_a)) -
                              2.0 * ln_G0 +
                              (8.0 / 3.0) * (m.T_a / m.T_m - m.T_a / p.T_e));
    out.within_window = t <= 0.01 * out.t_validity;
    const double root = std::sqrt(kd * t);
    out.T.reserve(y.size());
    for (const double yi : y) {
        out.T.push_back(p.T_e + out.a * std::sqrt(t) * stage_i_f(yi / root));
    }
    return out;
}

StageIIScales stage_ii_scales(const MaterialProps& m, const ProcessParams& p) {
    const double ln_Ge = ln_soft_gradient(p.T_e, m, p);
    StageIIScales s;
    s.temp_scale = 0.75 * p.T_e * p.T_e / m.T_a;
    s.y_scale = std::exp(std::log(s.temp_scale) - ln_Ge);
    s.t_scale = s.y_scale * s.y_scale / m.diffusivity();
    return s;
}

StageIIResult stage_ii_solve(const StageIIConfig& cfg) {
    if (!(cfg.tau_end > 0.0)) throw ValidationError("stage_ii_solve: tau_end must be > 0");
    if (!(cfg.dtau > 0.0)) throw ValidationError("stage_ii_solve: dtau must be > 0");
    if (cfg.n < 3) throw ValidationError("stage_ii_solve: need n >= 3");

    const double Y_max = cfg.Y_max > 0.0 ? cfg.Y_max : 6.0 * std::sqrt(cfg.tau_end);
    const double dY = Y_max / (cfg.n - 1);
    const double r = cfg.dtau / (dY * dY);
    std::vector<double> Y(cfg.n);
    for (int i = 0; i < cfg.n; ++i) Y[i] = dY * i;

    std::vector<double> ph(cfg.n, 0.0);
    std::vector<double> rec = cfg.record_taus;
    std::sort(rec.begin(), rec.end());
    std::size_t next_rec = 0;

    StageIIResult res;
    const long n_steps = std::lround(std::ceil(cfg.tau_end / cfg.dtau - 1e-9));
    for (long it = 0; it < n_steps; ++it) {
        const double tau = (it + 1) * cfg.dtau;
        const AffineInterior af = interior_solve(ph, r, 0.0, dY, 0.0);
        double p0 = ph[0];
        bool ok = false;
        for (int nw = 0; nw < cfg.newton_max; ++nw) {
            const double flux = std::exp(-p0);
            const double R = af.grad_slope * p0 + af.grad_inter - flux;
            if (std::abs(R) <= cfg.newton_tol * std::max(flux, 1e-300)) {
                ok = true;
                break;
            }
            p0 -= R / (af.grad_slope + flux);
        }
        if (!ok) throw SolverError("stage_ii_solve: boundary Newton did not converge");
        ph[0] = p0;
        for (int i = 1; i < cfg.n - 1; ++i) ph[i] = af.base[i - 1] + af.prop[i - 1] * p0;
        ph[cfg.n - 1] = 0.0;
        res.tau_series.push_back(tau);
        res.varphi0_series.push_back(p0);
        while (next_rec < rec.size() && tau >= rec[next_rec] * (1.0 - 1e-12)) {
            res.fields.push_back(StageIIField{tau, Y, ph});
            ++next_rec;
        }
    }
    return res;
}

StageIIIGradient stage_iii_bc(double T, const MaterialProps& m, const ProcessParams& p) {
    if (!(T > 0.0) || T >= m.T_m) {
        throw ValidationError("stage_iii_bc requires 0 < T < T_m");
    }
    // soft closure with the Arrhenius factor frozen at the ambient value
    const double ln_G0_T = (std::log(2.0 * m.T_a) + 4.0 * std::log(m.kappa_m) -
                            4.0 * std::log(m.k) + 5.0 * std::log(p.U_e) +
                            4.0 * std::log1p(-T / m.T_m) - 2.0 * std::log(T)) /
                           3.0;
    StageIIIGradient out;
    out.G = std::exp(ln_G0_T + (4.0 / 3.0) * (m.T_a / p.T_e - m.T_a / m.T_m));
    const double lower = p.T_e + 5.0 * p.T_e * p.T_e / m.T_a;
    const double upper = m.T_m - 5.0 * m.T_m * m.T_m / m.T_a;
    out.in_window = T >= lower && T <= upper;
    return out;
}

SoftScaleReport soft_nondimensionalize(const MaterialProps& m, const ProcessParams& p,
                                       const SoftSteady& steady, double N) {
    SoftScaleReport rep;
    rep.scales = compute_scales(m, p, N);
    rep.n_coupling = N;
    rep.l_star = p.l / steady.l_inf;
    rep.temp_span = steady.T_inf - p.T_e;
    rep.centre_variation = steady.T_inf * steady.T_inf / m.T_a;
    rep.variation_ratio = rep.centre_variation / rep.temp_span;
    return rep;
}

}  // namespace weldtherm
