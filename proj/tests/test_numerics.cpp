#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "weldtherm/errors.hpp"
#include "weldtherm/numerics.hpp"

using namespace weldtherm;

namespace {

Tridiag random_dd_system(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::uniform_real_distribution<double> bump(0.1, 2.0);
    Tridiag sys;
    sys.lower.assign(n, 0.0);
    sys.diag.assign(n, 0.0);
    sys.upper.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) sys.lower[i] = off(rng);
        if (i + 1 < n) sys.upper[i] = off(rng);
        const double row = std::abs(sys.lower[i]) + std::abs(sys.upper[i]);
        sys.diag[i] = (off(rng) < 0.0 ? -1.0 : 1.0) * (row + bump(rng));
    }
    return sys;
}

}  // namespace

TEST_CASE("tridiag: identity returns rhs") {
    Tridiag sys;
    sys.lower.assign(4, 0.0);
    sys.diag.assign(4, 1.0);
    sys.upper.assign(4, 0.0);
    const std::vector<double> rhs{1.0, -2.0, 3.5, 0.25};
    CHECK(solve_tridiag(sys, rhs) == rhs);
}

TEST_CASE("tridiag: 3x3 hand-solved system") {
    // [2 1 0; 1 3 1; 0 1 2] x = [3; 10; 9]  ->  x = [0.5, 2, 3.5]
    Tridiag sys;
    sys.lower = {0.0, 1.0, 1.0};
    sys.diag = {2.0, 3.0, 2.0};
    sys.upper = {1.0, 1.0, 0.0};
    const std::vector<double> rhs{3.0, 10.0, 9.0};
    const auto x = solve_tridiag(sys, rhs);
    CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x[2] == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("tridiag: random diagonally dominant systems match dense elimination") {
    auto rng = oracles::rng(7);
    std::uniform_int_distribution<std::size_t> size(2, 200);
    std::uniform_real_distribution<double> rv(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = trial == 0 ? 50 : size(rng);
        const Tridiag sys = random_dd_system(rng, n);
        std::vector<double> rhs(n);
        for (auto& v : rhs) v = rv(rng);
        const auto x = solve_tridiag(sys, rhs);
        const auto ref = oracles::dense_solve(
            oracles::tridiag_to_dense(sys.lower, sys.diag, sys.upper), rhs);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num = std::max(num, std::abs(x[i] - ref[i]));
            den = std::max(den, std::abs(ref[i]));
        }
        CHECK(num <= 1e-10 * std::max(den, 1.0));
    }
}

TEST_CASE("tridiag: zero pivot raises") {
    Tridiag sys;
    sys.lower = {0.0, 1.0};
    sys.diag = {0.0, 1.0};
    sys.upper = {1.0, 0.0};
    const std::vector<double> rhs{1.0, 1.0};
    CHECK_THROWS_AS((void)solve_tridiag(sys, rhs), SolverError);
}

TEST_CASE("find_root: linear and sqrt2") {
    const auto lin = [](double x) { return x - 1.0; };
    CHECK(find_root(lin, make_bracket(lin, 0.0, 2.0), 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
    const auto sq = [](double x) { return x * x - 2.0; };
    CHECK(find_root(sq, make_bracket(sq, 1.0, 2.0), 1e-9) ==
          doctest::Approx(1.41421356).epsilon(1e-7));
}

TEST_CASE("find_root: stays inside the bracket") {
    auto rng = oracles::rng(11);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double c = shift(rng);
        const auto f = [c](double x) { return std::tan(x / 4.0) + x * x * x - c; };
        const double lo = -3.0, hi = 3.0;
        const auto b = make_bracket(f, lo, hi);
        if (b.f_lo * b.f_hi > 0.0) continue;
        const double x = find_root(f, b, 1e-12);
        CHECK(x >= lo);
        CHECK(x <= hi);
        CHECK(std::abs(f(x)) < 1e-6);
    }
}

TEST_CASE("find_root: invalid bracket and iteration cap raise") {
    const auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS((void)find_root(f, make_bracket(f, -1.0, 1.0), 1e-12), ValidationError);
    const auto g = [](double x) { return std::cos(x) - x; };
    CHECK_THROWS_AS((void)find_root(g, make_bracket(g, 0.0, 1.0), 0.0, 3), SolverError);
}

TEST_CASE("find_root: matches a brute-force scan on the finite-l steady closure") {
    // V^2 rho cp dT / k = M (1 - exp(-rho cp V l / k)), Fig.-2-like numbers
    const double kd = 4.52e-6, M = 28.024, dT = 1050.0, l = 0.018;
    const auto resid = [&](double V) {
        return V * V * dT / kd - M * (-std::expm1(-V * l / kd));
    };
    const double V = find_root(resid, make_bracket(resid, 1e-8, 1e-2), 1e-16);

    // scan for the sign change on a fine grid
    const int steps = 2000000;
    double scan = 0.0;
    double prev = resid(1e-8);
    for (int i = 1; i <= steps; ++i) {
        const double v = 1e-8 + (1e-2 - 1e-8) * i / steps;
        const double cur = resid(v);
        if (prev < 0.0 && cur >= 0.0) {
            scan = v;
            break;
        }
        prev = cur;
    }
    CHECK(V == doctest::Approx(scan).epsilon(1e-5));
    CHECK(V == doctest::Approx(2.865199e-4).epsilon(1e-4));
}

TEST_CASE("integrate_ode: constant and exponential") {
    const OdeRhs zero = [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; };
    const double y0[1] = {3.25};
    const auto traj = integrate_ode(zero, y0, 0.0, 1.0, 0.1);
    for (std::size_t i = 0; i < traj.steps(); ++i) CHECK(traj.state(i)[0] == 3.25);

    const OdeRhs growth = [](double, std::span<const double> y, std::span<double> d) {
        d[0] = y[0];
    };
    const double one[1] = {1.0};
    const auto e = integrate_ode(growth, one, 0.0, 1.0, 1e-3);
    CHECK(std::abs(e.state(e.steps() - 1)[0] - std::exp(1.0)) < 1e-6);
}

TEST_CASE("integrate_ode: fourth-order convergence on the layer equation") {
    // phi'' = phi^-4 from (1, 0); Richardson step-halving ratio ~ 16
    const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> d) {
        d[0] = y[1];
        d[1] = 1.0 / (y[0] * y[0] * y[0] * y[0]);
    };
    const double y0[2] = {1.0, 0.0};
    const auto val = [&](double h) {
        const auto t = integrate_ode(rhs, y0, 0.0, 2.0, h);
        return t.state(t.steps() - 1)[0];
    };
    const double f1 = val(0.02), f2 = val(0.01), f3 = val(0.005);
    const double ratio = (f1 - f2) / (f2 - f3);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("integrate_ode: non-finite state raises") {
    const OdeRhs blowup = [](double, std::span<const double> y, std::span<double> d) {
        d[0] = y[0] * y[0];
    };
    const double y0[1] = {10.0};
    CHECK_THROWS_AS((void)integrate_ode(blowup, y0, 0.0, 10.0, 0.05), SolverError);
}

TEST_CASE("quad_trapezoid: constants, linears, quadratic") {
    {
        const std::vector<double> x{0.0, 0.7, 1.1, 2.0}, f{1.0, 1.0, 1.0, 1.0};
        CHECK(quad_trapezoid(x, f) == doctest::Approx(2.0).epsilon(1e-15));
    }
    {
        // trapezoid is exact for linear integrands on any partition
        const std::vector<double> x{0.0, 0.13, 0.5, 0.77, 1.0};
        std::vector<double> f(x);
        CHECK(quad_trapezoid(x, f) == doctest::Approx(0.5).epsilon(1e-15));
    }
    {
        std::vector<double> x(1001), f(1001);
        for (int i = 0; i <= 1000; ++i) {
            x[i] = i / 1000.0;
            f[i] = x[i] * x[i];
        }
        CHECK(std::abs(quad_trapezoid(x, f) - 1.0 / 3.0) < 1e-6);
    }
}

TEST_CASE("quad_trapezoid: unsorted abscissae raise") {
    const std::vector<double> x{0.0, 0.5, 0.4}, f{1.0, 1.0, 1.0};
    CHECK_THROWS_AS((void)quad_trapezoid(x, f), ValidationError);
}
