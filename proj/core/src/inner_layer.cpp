#include "weldtherm/inner_layer.hpp"

#include <cmath>

#include "weldtherm/errors.hpp"
#include "weldtherm/numerics.hpp"

namespace weldtherm {

namespace {

constexpr double kShootDt = 1e-3;

OdeTrajectory shoot(double phi0, double eta_max) {
    const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> dydt) {
        dydt[0] = y[1];
        const double p2 = y[0] * y[0];
        dydt[1] = 1.0 / (p2 * p2);
    };
    const double y0[2] = {phi0, 0.0};
    return integrate_ode(rhs, y0, 0.0, eta_max, kShootDt);
}

// Mismatch against the truncated far-field condition phi' = 1 - 1/(3 phi^3).
double far_field_residual(const OdeTrajectory& traj) {
    const auto last = traj.state(traj.steps() - 1);
    const double phi = last[0], dphi = last[1];
    return dphi - (1.0 - 1.0 / (3.0 * phi * phi * phi));
}

// 12 * int_{eta_max}^inf eta^2 / (eta + c)^4 d eta, closed form.
double n_tail(double eta_max, double c) {
    const double u = eta_max + c;
    return 12.0 * (1.0 / u - c / (u * u) + c * c / (3.0 * u * u * u));
}

// 12 * int_{eta_max}^inf eta / (eta + c)^4 d eta, closed form.
double w_tail(double eta_max, double c) {
    const double u = eta_max + c;
    return 12.0 * (0.5 / (u * u) - c / (3.0 * u * u * u));
}

}  // namespace

InnerSolution solve_inner_bvp(double tol, double eta_max) {
    if (!(tol > 0.0)) throw ValidationError("solve_inner_bvp: tol must be > 0");
    if (!(eta_max >= 20.0)) throw ValidationError("solve_inner_bvp: eta_max must be >= 20");

    const auto residual = [eta_max](double phi0) {
        return far_field_residual(shoot(phi0, eta_max));
    };

    double lo = 0.2, hi = 5.0;
    double f_lo = residual(lo), f_hi = residual(hi);
    for (int widen = 0; f_lo * f_hi > 0.0; ++widen) {
        if (widen >= 12) {
            throw SolverError("solve_inner_bvp: could not bracket phi(0)");
        }
        lo *= 0.5;
        hi *= 2.0;
        f_lo = residual(lo);
        f_hi = residual(hi);
    }
    const double phi0 =
        find_root(residual, RootBracket{lo, hi, f_lo, f_hi}, tol);

    const OdeTrajectory traj = shoot(phi0, eta_max);
    InnerSolution sol;
    sol.phi0 = phi0;
    sol.eta_max = eta_max;
    const std::size_t nsteps = traj.steps();
    sol.eta.resize(nsteps);
    sol.phi.resize(nsteps);
    sol.dphi.resize(nsteps);
    std::vector<double> integrand(nsteps);
    for (std::size_t i = 0; i < nsteps; ++i) {
        const auto s = traj.state(i);
        sol.eta[i] = traj.t[i];
        sol.phi[i] = s[0];
        sol.dphi[i] = s[1];
        const double p2 = s[0] * s[0];
        integrand[i] = sol.eta[i] * sol.eta[i] / (p2 * p2);
    }
    sol.c_inf = sol.phi.back() - eta_max;
    sol.N = 12.0 * quad_trapezoid(sol.eta, integrand) + n_tail(eta_max, sol.c_inf);
    return sol;
}

std::vector<std::pair<double, double>> squeeze_profile(const InnerSolution& sol) {
    const std::size_t n = sol.eta.size();
    if (n < 2) throw ValidationError("squeeze_profile: empty inner solution");
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p2 = sol.phi[i] * sol.phi[i];
        integrand[i] = sol.eta[i] / (p2 * p2);
    }
    std::vector<std::pair<double, double>> w(n);
    double acc = w_tail(sol.eta_max, sol.c_inf) / 12.0;
    w[n - 1] = {sol.eta[n - 1], 12.0 * acc};
    for (std::size_t i = n - 1; i-- > 0;) {
        acc += 0.5 * (sol.eta[i + 1] - sol.eta[i]) * (integrand[i] + integrand[i + 1]);
        w[i] = {sol.eta[i], 12.0 * acc};
    }
    return w;
}

double pressure_profile(double x, const ProcessParams& p) {
    if (!(x >= 0.0) || x > p.L) {
        throw ValidationError("pressure_profile: x must lie in [0, L]");
    }
    return 1.5 * p.P * (p.L * p.L - x * x) / (p.L * p.L);
}

double ln_soft_gradient(double T_c, const MaterialProps& m, const ProcessParams& p) {
    if (!(T_c > 0.0) || T_c >= m.T_m) {
        throw ValidationError("soft_gradient requires 0 < T_c < T_m");
    }
    const double num = std::log(2.0 * m.T_a) + 5.0 * std::log(p.U_e) +
                       4.0 * std::log(m.kappa_m) + 4.0 * std::log1p(-T_c / m.T_m) +
                       4.0 * m.T_a / T_c - 4.0 * m.T_a / m.T_m - 4.0 * std::log(m.k) -
                       2.0 * std::log(T_c);
    return num / 3.0;
}

double soft_gradient(double T_c, const MaterialProps& m, const ProcessParams& p) {
    return std::exp(ln_soft_gradient(T_c, m, p));
}

double ln_soft_velocity(double T_c, double ln_G, double N, const MaterialProps& m,
                        const ProcessParams& p) {
    return std::log(N) + 4.0 * std::log(T_c) + std::log(p.P) + 2.0 * std::log(p.U_e) -
           std::log(m.k) - std::log(m.T_a) - 2.0 * std::log(p.L) - 3.0 * ln_G;
}

double soft_velocity(double T_c, double G, double N, const MaterialProps& m,
                     const ProcessParams& p) {
    if (!(G > 0.0)) {
        throw SolverError("soft_velocity: non-positive boundary gradient (model breakdown)");
    }
    return std::exp(ln_soft_velocity(T_c, std::log(G), N, m, p));
}

SoftLayerClosure make_soft_closure(double T_c, const MaterialProps& m, const ProcessParams& p,
                                   double N) {
    SoftLayerClosure c{};
    c.T_c = T_c;
    const double ln_G = ln_soft_gradient(T_c, m, p);
    c.G = std::exp(ln_G);
    c.b = 2.0 * m.T_a * c.G / (T_c * T_c);
    c.K_c = kappa_soft_centre(T_c, m);
    c.sigma = m.k * c.G / p.U_e;
    c.V = std::exp(ln_soft_velocity(T_c, ln_G, N, m, p));
    return c;
}

std::vector<std::pair<double, double>> soft_layer_profile(const SoftLayerClosure& c,
                                                          const MaterialProps& m,
                                                          std::span<const double> y) {
    std::vector<std::pair<double, double>> out;
    out.reserve(y.size());
    for (const double yi : y) {
        const double z = std::abs(c.b * yi);
        // ln cosh z, overflow-safe
        const double lc = z + std::log1p(std::exp(-2.0 * z)) - std::numbers::ln2;
        out.emplace_back(yi, c.T_c - c.T_c * c.T_c / (2.0 * m.T_a) * lc);
    }
    return out;
}

}  // namespace weldtherm
