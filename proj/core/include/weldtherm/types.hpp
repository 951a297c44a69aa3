#pragma once

#include <numbers>
#include <vector>

namespace weldtherm {

/// Constitutive model regime for the lubricating layer.
enum class MaterialModel { hard, soft };

/// How the dimensionless coupling constant N is obtained.
enum class CouplingMode { computed_from_bvp, decoupling_constant, asymptotic_constant };

/// Workpiece material constants. SI units, absolute temperatures.
///
/// The shear stress in the softened layer follows
///   sigma = kappa(T) (du/dy)^(1/4),
///   kappa(T) = kappa_m (1 - T/T_m) exp((T_a/T_m)(T_m/T - 1)),
/// so kappa_m carries units Pa s^(1/4).
struct MaterialProps {
    double rho;      ///< density [kg m^-3]
    double cp;       ///< specific heat [J kg^-1 K^-1]
    double k;        ///< thermal conductivity [W m^-1 K^-1]
    double kappa_m;  ///< consistency constant [Pa s^(1/4)]
    double T_m;      ///< melting temperature [K]
    double T_a;      ///< activation temperature [K]

    void validate() const;
    double diffusivity() const { return k / (rho * cp); }
};

/// Controllable process inputs.
struct ProcessParams {
    double P;    ///< applied average pressure [Pa]
    double L;    ///< workpiece half-length along the weld [m]
    double U_e;  ///< sliding speed magnitude [m s^-1]
    double l;    ///< workpiece length normal to the weld [m]
    double T_e;  ///< ambient temperature [K]
    MaterialModel model = MaterialModel::hard;
    CouplingMode n_mode = CouplingMode::computed_from_bvp;

    void validate(const MaterialProps& m) const;
};

/// Scaling block for the layer problem plus the steady outer scales.
struct DerivedScales {
    double V_E;    ///< approach-velocity scale [m s^-1]
    double S;      ///< stress scale [Pa]
    double h;      ///< layer-width scale [m]
    double delta;  ///< temperature-variation scale [K]
    double G_E;    ///< temperature-gradient scale [K m^-1]
    double M;      ///< hard-model non-local constant, V*G = M [K s^-1]
    double V_inf;  ///< steady approach speed, large-l limit [m s^-1]
    double l_inf;  ///< steady length scale k/(rho cp V_inf) [m]
    double t_inf;  ///< steady time scale l_inf^2 rho cp / k [s]
};

/// Uniform 1-D grid on [0, length], node 0 at the weld plane.
struct Grid1D {
    int n;
    double length;
    double dy;
};

Grid1D make_grid(int n, double length);

/// Outer temperature field at one instant. Node 0 is the weld side.
/// V and G are the converged values of the last accepted step and are
/// authoritative for the non-local coupling.
struct ThermalState {
    double t = 0.0;
    std::vector<double> T;
    double V = 0.0;  ///< approach velocity [m s^-1]
    double G = 0.0;  ///< boundary gradient magnitude -dT/dy at y=0 [K m^-1]
};

// Temperature-dependence of the constitutive coefficient.
double kappa_full(double T, const MaterialProps& m);
double kappa_hard_lin(double T, const MaterialProps& m);
double kappa_soft(double T, double T_c, const MaterialProps& m);
/// K_c of the soft-layer approximation: kappa evaluated at the centre
/// temperature, kappa_m (1 - T_c/T_m) exp(T_a/T_c - T_a/T_m).
double kappa_soft_centre(double T_c, const MaterialProps& m);
double ln_kappa_soft_centre(double T_c, const MaterialProps& m);

/// Dimensionless coupling constants for the soft-material closure.
inline double soft_decoupling_N() { return std::numbers::pi * std::numbers::pi / 4.0; }
inline double soft_asymptotic_N() {
    return 0.75 * (2.5 - std::numbers::pi * std::numbers::pi / 12.0);
}

DerivedScales compute_scales(const MaterialProps& m, const ProcessParams& p, double N);

}  // namespace weldtherm
