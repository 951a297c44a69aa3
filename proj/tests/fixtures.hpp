// Shared test materials.
//
// fig2_*: hard-model anchor set with k/(rho c_p) = 4.52e-6 m^2/s,
// T_e = 300 K, T_m = 1350 K, l = 0.018 m and the published non-local
// constant M = 28.024 K/s.
//
// soft_test_*: synthetic verification material with a moderate activation
// temperature (T_a/T_e = 15) so the early-time stages span resolvable
// windows; kappa_m and P are derived from equilibrium targets
// T_inf = 700 K and l_inf = 1.25 mm.
#pragma once

#include <cmath>

#include "weldtherm/types.hpp"

namespace fixtures {

inline constexpr double kFig2M = 28.024;  // K/s

inline weldtherm::MaterialProps fig2_material() {
    return {4420.0, 550.0, 10.98812, 1.7e8, 1350.0, 9000.0};
}

inline weldtherm::ProcessParams fig2_process() {
    return {1e8,   0.01, 0.5, 0.018, 300.0, weldtherm::MaterialModel::hard,
            weldtherm::CouplingMode::computed_from_bvp};
}

struct SoftFixture {
    weldtherm::MaterialProps m;
    weldtherm::ProcessParams p;
    double N;
    double T_inf_target;
    double l_inf_target;
};

inline SoftFixture soft_test_fixture() {
    SoftFixture f;
    f.m = {4420.0, 550.0, 10.98812, 0.0, 1350.0, 4500.0};
    f.p = {0.0,   0.01, 0.1, 0.01, 300.0, weldtherm::MaterialModel::soft,
           weldtherm::CouplingMode::decoupling_constant};
    f.N = weldtherm::soft_decoupling_N();
    f.T_inf_target = 700.0;
    f.l_inf_target = 1.25e-3;

    const double kd = f.m.k / (f.m.rho * f.m.cp);
    const double G_inf = (f.T_inf_target - f.p.T_e) / f.l_inf_target;
    const double V_inf = kd / f.l_inf_target;
    // boundary closure G^3 = 2 T_a U_e^5 kappa_m^4 (1 - T/T_m)^4 e^(4T_a/T - 4T_a/T_m)/(k^4 T^2)
    const double ln_km4 = 3.0 * std::log(G_inf) + 4.0 * std::log(f.m.k) +
                          2.0 * std::log(f.T_inf_target) -
                          (4.0 * f.m.T_a / f.T_inf_target - 4.0 * f.m.T_a / f.m.T_m) -
                          std::log(2.0 * f.m.T_a) - 5.0 * std::log(f.p.U_e) -
                          4.0 * std::log1p(-f.T_inf_target / f.m.T_m);
    f.m.kappa_m = std::exp(0.25 * ln_km4);
    // velocity closure V = N P U_e^2 T^4 / (k T_a L^2 G^3)
    f.p.P = V_inf * G_inf * G_inf * G_inf * f.m.k * f.m.T_a * f.p.L * f.p.L /
            (f.N * f.p.U_e * f.p.U_e * std::pow(f.T_inf_target, 4));
    return f;
}

}  // namespace fixtures
