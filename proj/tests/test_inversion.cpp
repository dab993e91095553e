#include "adr/inversion.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace adr;

namespace {

struct Pair {
    const char* name;
    Complex (*F)(Complex);
    double (*f)(double);
};

const Pair kBattery[] = {
    {"1/s", [](Complex s) { return 1.0 / s; }, [](double) { return 1.0; }},
    {"1/s^2", [](Complex s) { return 1.0 / (s * s); },
     [](double t) { return t; }},
    {"1/(s+1)", [](Complex s) { return 1.0 / (s + 1.0); },
     [](double t) { return std::exp(-t); }},
    {"1/(s+1)^2",
     [](Complex s) {
         Complex d = s + 1.0;
         return 1.0 / (d * d);
     },
     [](double t) { return t * std::exp(-t); }},
};

double battery_error(const CFQuadrature& quad) {
    double worst = 0.0;
    for (const auto& p : kBattery)
        for (double t : {0.1, 0.5, 1.0, 2.0, 10.0})
            worst = std::max(worst,
                             std::abs(invert_transform(quad, p.F, t) - p.f(t)));
    return worst;
}

} // namespace

TEST_CASE("quadrature order validation") {
    CHECK_THROWS_AS(CFQuadrature::order(0), std::invalid_argument);
    CHECK_THROWS_AS(CFQuadrature::order(13), std::invalid_argument);
    CHECK_THROWS_AS(CFQuadrature::order(34), std::invalid_argument);
    for (int n = 2; n <= 32; n += 2) {
        auto q = CFQuadrature::order(n);
        CHECK(q.n() == n);
        CHECK(q.nodes().size() == static_cast<std::size_t>(n / 2));
        for (const auto& node : q.nodes())
            CHECK(node.pole.imag() > 0.0); // upper-half-plane representatives
    }
}

TEST_CASE("transform-pair battery at N=14") {
    auto quad = CFQuadrature::order(14);
    auto one = [](Complex s) { return 1.0 / s; };
    for (double t : {0.1, 1.0, 10.0})
        CHECK(std::abs(invert_transform(quad, one, t) - 1.0) < 1e-10);
    auto decay = [](Complex s) { return 1.0 / (s + 1.0); };
    CHECK(std::abs(invert_transform(quad, decay, 1.0) - std::exp(-1.0))
          < 1e-10);
    auto ramp = [](Complex s) { return 1.0 / (s * s); };
    CHECK(std::abs(invert_transform(quad, ramp, 2.0) - 2.0) < 1e-9);
    CHECK(battery_error(quad) < 1e-8);
}

TEST_CASE("quadrature self-test across all orders") {
    // geometric convergence ~9.3^-N until the double-precision floor
    auto one = [](Complex s) { return 1.0 / s; };
    for (int n = 2; n <= 32; n += 2) {
        auto quad = CFQuadrature::order(n);
        double err = std::abs(invert_transform(quad, one, 1.0) - 1.0);
        double tol = std::max(std::pow(10.0, -0.6 * n), 5e-13);
        CAPTURE(n);
        CHECK(err < tol);
    }
}

TEST_CASE("battery error is non-increasing in N (within 10x noise)") {
    double prev = battery_error(CFQuadrature::order(6));
    for (int n : {10, 14, 18}) {
        double cur = battery_error(CFQuadrature::order(n));
        CAPTURE(n);
        CHECK(cur < 10.0 * prev);
        prev = cur;
    }
    CHECK(battery_error(CFQuadrature::order(18))
          < battery_error(CFQuadrature::order(6)));
}

TEST_CASE("conjugate-pair symmetry: half-sum equals full-sum") {
    // Eq-(42) style half sum over upper-half poles vs explicit sum over all
    // 2*(N/2) poles with the conjugate pairs written out.
    auto quad = CFQuadrature::order(14);
    auto F = [](Complex s) { return 1.0 / (s + 0.5); };
    for (double t : {0.3, 1.0, 4.0}) {
        double half = invert_transform(quad, F, t);
        Complex acc = 0.0;
        for (const auto& node : quad.nodes()) {
            acc += node.residue * F(node.pole / t);
            acc += std::conj(node.residue) * F(std::conj(node.pole) / t);
        }
        double full = (-1.0 / t) * acc.real();
        CHECK(std::abs(half - full) < 1e-12);
    }
}

TEST_CASE("invert_at: constant steady initial state is preserved") {
    Problem p;
    p.layers.push_back({0.0, 5.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.3, 1.0});
    p.layers.push_back({5.0, 12.0, 2.0, 7.0, 0.0, 0.0, 0.0, 0.4, 1.0});
    p.inlet = {0.0, 1.0, TransientSignal::zero()};
    p.outlet = {0.0, 1.0, TransientSignal::zero()};
    auto quad = CFQuadrature::order(14);
    for (double t : {0.1, 1.0, 10.0})
        for (double x : {0.0, 2.5, 5.0, 9.0, 12.0})
            CHECK(std::abs(invert_at(p, quad, x, t) - 1.0) < 1e-10);
}

TEST_CASE("advection indicator") {
    auto spec = case_library(5);
    // max(25*10/50, 40*20/20) = 40
    CHECK(advection_indicator(spec.problem) == doctest::Approx(40.0));
}

TEST_CASE("solve_grid: t = 0 returns the initial condition") {
    auto spec = case_library(12);
    auto quad = CFQuadrature::order(14);
    auto grid = solve_grid(spec.problem, quad, {5.0, 15.0, 19.0}, {0.0, 2.0});
    CHECK(grid.values[0][0] == 0.0);
    CHECK(grid.values[0][1] == 1.0); // inside the injected band [14, 18]
    CHECK(grid.values[0][2] == 0.0);
    CHECK(grid.values[1][1] < 1.0); // later time has evolved
}

TEST_CASE("solve_grid: superposition inactive before the step time") {
    auto c1 = case_library(1); // constant inlet
    auto c2 = case_library(2); // same problem, pulse of duration t0 = 0.5
    auto quad = CFQuadrature::order(14);
    std::vector<double> xs = {0.0, 5.0, 10.0, 15.0, 20.0};
    std::vector<double> ts = {0.1, 0.4, 0.5}; // t = t0 takes the left branch
    auto g1 = solve_grid(c1.problem, quad, xs, ts);
    auto g2 = solve_grid(c2.problem, quad, xs, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            CHECK(g1.values[i][j] == g2.values[i][j]);
}

TEST_CASE("solve_grid: step with t0 beyond the horizon equals constant") {
    auto spec = case_library(1);
    Problem stepped = spec.problem;
    stepped.inlet.signal =
        TransientSignal::step(spec.problem.inlet.signal.c0, 100.0);
    auto quad = CFQuadrature::order(14);
    std::vector<double> xs = {0.0, 7.0, 20.0};
    std::vector<double> ts = {0.5, 2.0, 4.0};
    auto a = solve_grid(spec.problem, quad, xs, ts);
    auto b = solve_grid(stepped, quad, xs, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            CHECK(std::abs(a.values[i][j] - b.values[i][j]) <= 1e-15);
}

TEST_CASE("solve_grid: small times after a step do not overflow") {
    auto spec = case_library(2);
    auto quad = CFQuadrature::order(14);
    auto grid = solve_grid(spec.problem, quad, {0.0, 1.0, 10.0},
                           {1e-3, 0.6, 1.0});
    for (const auto& row : grid.values)
        for (double v : row) {
            CHECK(std::isfinite(v));
            CHECK(v > -1e-6);
            CHECK(v < 1.0 + 1e-6);
        }
}

TEST_CASE("time-domain interface continuity for catalogued cases") {
    auto quad = CFQuadrature::order(14);
    for (int id : {5, 8, 9, 12}) {
        auto spec = case_library(id);
        double L = spec.problem.length();
        for (std::size_t i = 0; i + 1 < spec.problem.layers.size(); ++i) {
            double xi = spec.problem.layers[i].x_right;
            std::vector<double> xs = {xi - 1e-9 * L, xi + 1e-9 * L};
            auto grid = solve_grid(spec.problem, quad, xs,
                                   {spec.t_values.front()});
            CAPTURE(id);
            CAPTURE(xi);
            CHECK(std::abs(grid.values[0][0] - grid.values[0][1]) <= 1e-8);
        }
    }
}
