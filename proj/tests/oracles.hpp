// Test-only reference implementations, independent of the library paths
// they check.
#pragma once

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "weldtherm/types.hpp"

namespace oracles {

// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        }
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        if (A[col][col] == 0.0) throw std::runtime_error("dense_solve: singular");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

inline std::vector<std::vector<double>> tridiag_to_dense(std::span<const double> lower,
                                                         std::span<const double> diag,
                                                         std::span<const double> upper) {
    const std::size_t n = diag.size();
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = diag[i];
        if (i > 0) A[i][i - 1] = lower[i];
        if (i + 1 < n) A[i][i + 1] = upper[i];
    }
    return A;
}

// Explicit FTCS step of the non-local hard problem, V lagged to the old level.
inline void ftcs_hard_step(std::vector<double>& T, double dt, double dy, double kd, double M,
                           double T_m, double T_e) {
    const std::size_t n = T.size();
    const double G = (3.0 * T[0] - 4.0 * T[1] + T[2]) / (2.0 * dy);
    const double V = M / G;
    const double r = kd * dt / (dy * dy);
    const double q = V * dt / (2.0 * dy);
    std::vector<double> out(T);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = T[i] + r * (T[i + 1] - 2.0 * T[i] + T[i - 1]) + q * (T[i + 1] - T[i - 1]);
    }
    out[0] = T_m;
    out[n - 1] = T_e;
    T = std::move(out);
}

// One backward-Euler step of pure diffusion assembled densely (checks the
// tridiagonal BTCS path bit-for-bit when V = 0 up to solver roundoff).
inline std::vector<double> dense_implicit_diffusion_step(const std::vector<double>& T_old,
                                                         double r, double T_m, double T_e,
                                                         double q = 0.0) {
    const std::size_t n = T_old.size();
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    std::vector<double> b = T_old;
    A[0][0] = 1.0;
    b[0] = T_m;
    A[n - 1][n - 1] = 1.0;
    b[n - 1] = T_e;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        A[i][i - 1] = -(r - q);
        A[i][i] = 1.0 + 2.0 * r;
        A[i][i + 1] = -(r + q);
    }
    return dense_solve(std::move(A), std::move(b));
}

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

}  // namespace oracles
