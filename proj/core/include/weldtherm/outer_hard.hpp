#pragma once

#include <span>
#include <vector>

#include "weldtherm/types.hpp"

namespace weldtherm {

struct HardRunConfig {
    Grid1D grid;
    double dt = 0.0;
    double t_end = 0.0;
    double picard_tol = 1e-10;
    int picard_max = 50;
    std::vector<double> snapshot_times;

    void validate() const;
};

struct SeriesSample {
    double t;
    double T_c;    ///< weld-side temperature T[0]
    double V;
    double G;
    double upset;  ///< cumulative shortening, trapezoid of V over t
};

struct Snapshot {
    double t_request;
    double t_actual;
    std::vector<double> T;
};

struct HardRunResult {
    std::vector<Snapshot> snapshots;
    std::vector<SeriesSample> series;
};

/// Cold start: T = T_e except the Dirichlet weld node at T_m. V(0) = 0.
ThermalState hard_initial_state(const HardRunConfig& cfg, const MaterialProps& m,
                                const ProcessParams& p);

/// One BTCS step of the non-local problem. Central-differenced implicit
/// convection; V resolved by Picard against V = M/G with G from the 3-point
/// one-sided boundary difference. The returned V and G satisfy V*G = M.
ThermalState hard_step(const ThermalState& state, const HardRunConfig& cfg, double M,
                       const MaterialProps& m, const ProcessParams& p);

HardRunResult hard_run(const HardRunConfig& cfg, const MaterialProps& m, const ProcessParams& p,
                       double M);

struct HardSteady {
    double V_inf;
    double l_inf;
    double t_inf;
    std::vector<double> y;
    std::vector<double> T;
};

/// Finite-length steady state: V solves
///   V^2 rho cp (T_m - T_e) / k = M (1 - exp(-rho cp V l / k)).
HardSteady hard_steady(const MaterialProps& m, const ProcessParams& p, double M, double l,
                       int n_samples = 201);

struct ShortTimeProfile {
    std::vector<double> T;
    double V;
    double G;
};

/// Early-time erfc similarity solution and the matching V ~ sqrt(t) law.
ShortTimeProfile hard_short_time(double t, std::span<const double> y, const MaterialProps& m,
                                 const ProcessParams& p, double M);

}  // namespace weldtherm
