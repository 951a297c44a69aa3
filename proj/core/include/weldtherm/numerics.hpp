#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace weldtherm {

/// Tridiagonal system. lower[0] and upper[n-1] are ignored.
struct Tridiag {
    std::vector<double> lower, diag, upper;
    std::size_t size() const { return diag.size(); }
};

/// Thomas algorithm. Throws SolverError on a (near-)zero pivot.
std::vector<double> solve_tridiag(const Tridiag& sys, std::span<const double> rhs);

/// Sign-change bracket for scalar root finding.
struct RootBracket {
    double lo, hi;
    double f_lo, f_hi;
};

RootBracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

/// Hybrid secant/bisection root finder. Converges when the bracket width
/// drops below tol or the residual hits zero; the result never leaves the
/// initial bracket.
double find_root(const std::function<double(double)>& f, RootBracket bracket, double tol,
                 int max_iter = 200);

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Fixed-step trajectory, row-major state storage.
struct OdeTrajectory {
    std::size_t dim = 0;
    std::vector<double> t;
    std::vector<double> y;

    std::size_t steps() const { return t.size(); }
    std::span<const double> state(std::size_t i) const {
        return {y.data() + i * dim, dim};
    }
};

/// Classical fixed-step RK4 over [t0, t1]. The final step is shortened to
/// land on t1 exactly. Throws SolverError if the state becomes non-finite.
OdeTrajectory integrate_ode(const OdeRhs& rhs, std::span<const double> y0, double t0, double t1,
                            double dt);

/// Composite trapezoid over strictly increasing abscissae.
double quad_trapezoid(std::span<const double> x, std::span<const double> f);

}  // namespace weldtherm
