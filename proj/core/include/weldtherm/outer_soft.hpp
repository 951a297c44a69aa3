#pragma once

#include <span>
#include <vector>

#include "weldtherm/outer_hard.hpp"
#include "weldtherm/types.hpp"

namespace weldtherm {

struct SoftRunConfig {
    Grid1D grid;
    double dt = 0.0;
    double t_end = 0.0;
    double picard_tol = 1e-10;
    int picard_max = 50;
    double newton_tol = 1e-10;
    int newton_max = 200;
    double N = 0.0;  ///< coupling constant, resolved from ProcessParams.n_mode
    std::vector<double> snapshot_times;

    void validate() const;
};

struct SoftRunResult {
    std::vector<Snapshot> snapshots;
    std::vector<SeriesSample> series;
    /// Set when T_c first exceeds T_m - 5 T_m^2/T_a: the soft closure is
    /// leaving its regime and a hard-model run should take over. No
    /// automatic switching is performed.
    bool hard_handoff_flagged = false;
    double t_handoff = 0.0;
};

/// Cold start: T = T_e everywhere (flux boundary, no Dirichlet weld node).
ThermalState soft_initial_state(const SoftRunConfig& cfg, const MaterialProps& m,
                                const ProcessParams& p);

/// One BTCS step. The weld node is closed by the nonlinear flux condition
/// (3 T0 - 4 T1 + T2)/(2 dy) = soft_gradient(T0), solved by damped Newton
/// on T0 with a bracketed bisection fallback; V follows from
/// V = N P U_e^2 T_c^4 / (k T_a L^2 G^3) under Picard, as in the hard model.
ThermalState soft_step(const ThermalState& state, const SoftRunConfig& cfg,
                       const MaterialProps& m, const ProcessParams& p);

SoftRunResult soft_run(const SoftRunConfig& cfg, const MaterialProps& m, const ProcessParams& p);

/// Equilibrium of the soft outer problem on (0, l).
struct SoftSteady {
    double T_inf;  ///< limiting centre temperature [K]
    double V_inf;
    double G_inf;
    double l_inf;
    double t_inf;
};

SoftSteady soft_steady(const MaterialProps& m, const ProcessParams& p, double N);

/// Steady convection-diffusion profile through (T_inf, V_inf) sampled at y.
std::vector<double> soft_steady_profile(const SoftSteady& st, const MaterialProps& m,
                                        const ProcessParams& p, std::span<const double> y);

/// Stage (i): constant-flux similarity solution while T_c - T_e << T_e^2/T_a.
struct StageIResult {
    std::vector<double> T;
    double G_e;         ///< frozen boundary gradient soft_gradient(T_e)
    double a;           ///< similarity amplitude sqrt(k/rho cp) G_e
    double t_validity;  ///< stage expires for t approaching this scale
    bool within_window;
};

StageIResult stage_i_profile(double t, std::span<const double> y, const MaterialProps& m,
                             const ProcessParams& p);

/// Similarity shape f and f' with f'' + (eta/2) f' - f/2 = 0, f'(0) = -1.
double stage_i_f(double eta);
double stage_i_df(double eta);

/// Stage (ii): parameter-free rescaled problem
///   d(varphi)/d(tau) = d2(varphi)/dY2,  -d(varphi)/dY = exp(-varphi) at Y = 0.
struct StageIIConfig {
    double tau_end = 0.0;
    double dtau = 0.0;
    int n = 0;
    double Y_max = 0.0;  ///< <= 0 selects 6 sqrt(tau_end)
    std::vector<double> record_taus;
    double newton_tol = 1e-13;
    int newton_max = 100;
};

struct StageIIField {
    double tau;
    std::vector<double> Y;
    std::vector<double> varphi;
};

struct StageIIResult {
    std::vector<StageIIField> fields;
    std::vector<double> tau_series;
    std::vector<double> varphi0_series;
};

StageIIResult stage_ii_solve(const StageIIConfig& cfg);

/// Dimensional re-embedding of the stage-(ii) variables:
/// t = t_scale * tau, y = y_scale * Y, T = T_e + temp_scale * varphi.
struct StageIIScales {
    double t_scale;
    double y_scale;
    double temp_scale;
};

StageIIScales stage_ii_scales(const MaterialProps& m, const ProcessParams& p);

/// Stage (iii) boundary gradient: the soft closure with the Arrhenius
/// factor frozen at T_e.
struct StageIIIGradient {
    double G;
    bool in_window;
};

StageIIIGradient stage_iii_bc(double T, const MaterialProps& m, const ProcessParams& p);

/// Scale report for the nondimensional reduction of the soft outer problem;
/// the boundary condition collapses to an effective Dirichlet phi = 1 when
/// T_a >> T_inf, with centre-temperature variation of order T_inf^2/T_a.
struct SoftScaleReport {
    DerivedScales scales;
    double n_coupling;
    double l_star;             ///< l / l_inf
    double temp_span;          ///< T_inf - T_e
    double centre_variation;   ///< T_inf^2 / T_a
    double variation_ratio;    ///< centre_variation / temp_span
};

SoftScaleReport soft_nondimensionalize(const MaterialProps& m, const ProcessParams& p,
                                       const SoftSteady& steady, double N);

}  // namespace weldtherm
