#pragma once

#include <span>
#include <utility>
#include <vector>

#include "weldtherm/types.hpp"

namespace weldtherm {

/// Solution of the scaled layer problem phi'' = phi^-4, phi'(0) = 0,
/// phi' -> 1 at infinity, truncated at eta_max with the first-integral
/// far-field condition. N = 12 * int eta^2 phi^-4 d eta closes the
/// hard-material velocity-gradient relation V*G = M.
struct InnerSolution {
    std::vector<double> eta;
    std::vector<double> phi;
    std::vector<double> dphi;
    double phi0 = 0.0;   ///< wall value phi(0)
    double c_inf = 0.0;  ///< far-field intercept, phi ~ eta + c_inf
    double N = 0.0;      ///< coupling constant
    double eta_max = 0.0;
};

/// Shoot on phi(0) until phi'(eta_max) matches 1 - 1/(3 phi(eta_max)^3);
/// the N integral gets a closed-form tail using phi ~ eta + c_inf.
InnerSolution solve_inner_bvp(double tol = 1e-10, double eta_max = 40.0);

/// Scaled squeeze velocity w*(eta) = 12 int_eta^inf eta' phi^-4 d eta',
/// tail handled analytically.
std::vector<std::pair<double, double>> squeeze_profile(const InnerSolution& sol);

/// Parabolic lubrication pressure p(x) = 3P(L^2 - x^2)/(2L^2).
double pressure_profile(double x, const ProcessParams& p);

/// Matching gradient of the soft-material layer at centre temperature T_c:
/// the positive root of T_c^2 G^3 / K_c^4 = 2 T_a U_e^5 / k^4.
/// Evaluated in log space; exponentially large values are expected.
double ln_soft_gradient(double T_c, const MaterialProps& m, const ProcessParams& p);
double soft_gradient(double T_c, const MaterialProps& m, const ProcessParams& p);

/// Non-local approach velocity for the soft model, V = N T_c^4 P U_e^2 / (k T_a L^2 G^3).
double soft_velocity(double T_c, double G, double N, const MaterialProps& m,
                     const ProcessParams& p);
double ln_soft_velocity(double T_c, double ln_G, double N, const MaterialProps& m,
                        const ProcessParams& p);

/// Closed-form inner quantities of the soft layer at a given centre temperature.
struct SoftLayerClosure {
    double T_c;    ///< centre temperature [K]
    double G;      ///< matching gradient magnitude [K m^-1]
    double b;      ///< profile wavenumber 2 T_a G / T_c^2 [m^-1]
    double K_c;    ///< consistency at T_c [Pa s^(1/4)]
    double V;      ///< approach velocity [m s^-1]
    double sigma;  ///< shear stress k G / U_e [Pa]
};

SoftLayerClosure make_soft_closure(double T_c, const MaterialProps& m, const ProcessParams& p,
                                   double N);

/// Layer temperature profile T(y) = T_c - (T_c^2 / 2 T_a) ln cosh(b y).
std::vector<std::pair<double, double>> soft_layer_profile(const SoftLayerClosure& c,
                                                          const MaterialProps& m,
                                                          std::span<const double> y);

}  // namespace weldtherm
