#include "weldtherm/types.hpp"

#include <cmath>
#include <string>

#include "weldtherm/errors.hpp"

namespace weldtherm {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

void MaterialProps::validate() const {
    require_positive(rho, "material.rho");
    require_positive(cp, "material.c_p");
    require_positive(k, "material.k");
    require_positive(kappa_m, "material.kappa_m");
    require_positive(T_m, "material.T_m");
    require_positive(T_a, "material.T_a");
}

void ProcessParams::validate(const MaterialProps& m) const {
    require_positive(P, "process.P");
    require_positive(L, "process.L");
    require_positive(U_e, "process.U_e");
    require_positive(l, "process.l");
    if (!(T_e > 0.0 && T_e < m.T_m)) {
        throw ValidationError("process.T_e must satisfy 0 < T_e < T_m");
    }
}

Grid1D make_grid(int n, double length) {
    if (n < 3) throw ValidationError("grid node count must be >= 3");
    require_positive(length, "grid length");
    return Grid1D{n, length, length / (n - 1)};
}

double kappa_full(double T, const MaterialProps& m) {
    if (!(T > 0.0) || T > m.T_m) {
        throw ValidationError("kappa_full requires 0 < T <= T_m");
    }
    if (T == m.T_m) return 0.0;
    return m.kappa_m * (1.0 - T / m.T_m) * std::exp((m.T_a / m.T_m) * (m.T_m / T - 1.0));
}

double kappa_hard_lin(double T, const MaterialProps& m) {
    if (!(T > 0.0) || T > m.T_m) {
        throw ValidationError("kappa_hard_lin requires 0 < T <= T_m");
    }
    return m.kappa_m * (1.0 - T / m.T_m);
}

double ln_kappa_soft_centre(double T_c, const MaterialProps& m) {
    if (!(T_c > 0.0) || T_c >= m.T_m) {
        throw ValidationError("soft-layer centre temperature requires 0 < T_c < T_m");
    }
    return std::log(m.kappa_m) + std::log1p(-T_c / m.T_m) + m.T_a / T_c - m.T_a / m.T_m;
}

double kappa_soft_centre(double T_c, const MaterialProps& m) {
    return std::exp(ln_kappa_soft_centre(T_c, m));
}

double kappa_soft(double T, double T_c, const MaterialProps& m) {
    if (!(T > 0.0)) throw ValidationError("kappa_soft requires T > 0");
    return std::exp(ln_kappa_soft_centre(T_c, m) + (m.T_a / (T_c * T_c)) * (T_c - T));
}

DerivedScales compute_scales(const MaterialProps& m, const ProcessParams& p, double N) {
    m.validate();
    p.validate(m);
    if (!(N > 0.0)) throw ValidationError("coupling constant N must be > 0");

    const double A = std::pow(m.k * m.T_m / m.kappa_m, 4.0 / 3.0);
    const double B = std::sqrt(p.P) / p.L;
    const double C = std::sqrt(m.rho * m.cp * (m.T_m - p.T_e));
    const double U23 = std::pow(p.U_e, 2.0 / 3.0);
    const double U53 = std::pow(p.U_e, 5.0 / 3.0);

    DerivedScales s{};
    s.V_E = A * B / (C * U23);
    s.S = A * B * C / U53;
    s.h = A / U53;
    s.delta = (A * A / m.k) * B * C / (U23 * U53);
    s.G_E = (A / m.k) * B * C / U23;
    s.M = N * std::pow(m.k, 5.0 / 3.0) * std::pow(m.T_m / m.kappa_m, 8.0 / 3.0) *
          (p.P / (p.L * p.L)) * std::pow(p.U_e, -4.0 / 3.0);
    s.V_inf = std::sqrt(s.M * m.k / (m.rho * m.cp * (m.T_m - p.T_e)));
    s.l_inf = m.k / (m.rho * m.cp * s.V_inf);
    s.t_inf = s.l_inf * s.l_inf * m.rho * m.cp / m.k;
    return s;
}

}  // namespace weldtherm
