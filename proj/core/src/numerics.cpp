#include "weldtherm/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "weldtherm/errors.hpp"

namespace weldtherm {

std::vector<double> solve_tridiag(const Tridiag& sys, std::span<const double> rhs) {
    const std::size_t n = sys.size();
    if (n == 0 || sys.lower.size() != n || sys.upper.size() != n || rhs.size() != n) {
        throw ValidationError("solve_tridiag: inconsistent system sizes");
    }
    std::vector<double> c(n), d(n);
    double piv = sys.diag[0];
    if (piv == 0.0) throw SolverError("solve_tridiag: zero pivot at row 0");
    c[0] = sys.upper[0] / piv;
    d[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = sys.diag[i] - sys.lower[i] * c[i - 1];
        if (piv == 0.0 || !std::isfinite(piv)) {
            throw SolverError("solve_tridiag: singular pivot at row " + std::to_string(i));
        }
        c[i] = (i + 1 < n) ? sys.upper[i] / piv : 0.0;
        d[i] = (rhs[i] - sys.lower[i] * d[i - 1]) / piv;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

RootBracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
    return RootBracket{lo, hi, f(lo), f(hi)};
}

double find_root(const std::function<double(double)>& f, RootBracket b, double tol,
                 int max_iter) {
    if (!(b.lo < b.hi) || !std::isfinite(b.f_lo) || !std::isfinite(b.f_hi) ||
        b.f_lo * b.f_hi > 0.0) {
        throw ValidationError("find_root: invalid bracket (no sign change)");
    }
    if (b.f_lo == 0.0) return b.lo;
    if (b.f_hi == 0.0) return b.hi;

    double x_prev = b.lo, f_prev = b.f_lo;
    double x_cur = b.hi, f_cur = b.f_hi;
    for (int it = 0; it < max_iter; ++it) {
        if (b.hi - b.lo <= tol) return 0.5 * (b.lo + b.hi);

        double x_next;
        const double denom = f_cur - f_prev;
        if (denom != 0.0) {
            x_next = x_cur - f_cur * (x_cur - x_prev) / denom;
        } else {
            x_next = 0.5 * (b.lo + b.hi);
        }
        // fall back to bisection when the secant step leaves the bracket
        // or fails to shrink it meaningfully
        const double margin = 0.01 * (b.hi - b.lo);
        if (!(x_next > b.lo + margin) || !(x_next < b.hi - margin)) {
            x_next = 0.5 * (b.lo + b.hi);
        }
        const double f_next = f(x_next);
        if (f_next == 0.0) return x_next;
        if (!std::isfinite(f_next)) {
            throw SolverError("find_root: non-finite residual");
        }
        if (f_next * b.f_lo < 0.0) {
            b.hi = x_next;
            b.f_hi = f_next;
        } else {
            b.lo = x_next;
            b.f_lo = f_next;
        }
        x_prev = x_cur;
        f_prev = f_cur;
        x_cur = x_next;
        f_cur = f_next;
    }
    throw SolverError("find_root: max iterations exceeded");
}

OdeTrajectory integrate_ode(const OdeRhs& rhs, std::span<const double> y0, double t0, double t1,
                            double dt) {
    if (!(dt > 0.0) || !std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) {
        throw ValidationError("integrate_ode: need finite span and dt > 0");
    }
    const std::size_t dim = y0.size();
    OdeTrajectory traj;
    traj.dim = dim;
    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    const auto push = [&](double t) {
        traj.t.push_back(t);
        traj.y.insert(traj.y.end(), y.begin(), y.end());
    };
    push(t0);

    double t = t0;
    while (t < t1) {
        const bool last = (t1 - t) <= dt;
        const double h = last ? t1 - t : dt;
        rhs(t, y, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(t + h, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i) {
            y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i])) {
                throw SolverError("integrate_ode: non-finite state at t = " + std::to_string(t));
            }
        }
        t = last ? t1 : t + h;
        push(t);
    }
    return traj;
}

double quad_trapezoid(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size() || x.size() < 2) {
        throw ValidationError("quad_trapezoid: need matching samples, at least two");
    }
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) {
            throw ValidationError("quad_trapezoid: abscissae must be strictly increasing");
        }
        acc += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    }
    return acc;
}

}  // namespace weldtherm
