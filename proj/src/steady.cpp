#include "adr/steady.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace adr {

double SteadyCoeffs::value(double x) const {
    double p = p0 + p1 * x + p2 * x * x;
    if (degenerate)
        return p + amp1 + amp2 * (x - x_left);
    return p + amp1 * std::exp(r1 * (x - x_right))
           + amp2 * std::exp(r2 * (x - x_left));
}

double SteadyCoeffs::derivative(double x) const {
    double dp = p1 + 2.0 * p2 * x;
    if (degenerate)
        return dp + amp2;
    return dp + amp1 * r1 * std::exp(r1 * (x - x_right))
           + amp2 * r2 * std::exp(r2 * (x - x_left));
}

double SteadySolution::operator()(double x) const {
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i)
        if (x <= layers_[i].x_right)
            return layers_[i].value(x);
    return layers_.back().value(x);
}

namespace {

// Dense LU solve with partial pivoting; m stays small so this is cheap.
std::vector<double> lu_solve(std::vector<std::vector<double>> a,
                             std::vector<double> b) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row)
            scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k]))
                piv = i;
        if (std::abs(a[piv][k]) < 1e-14 * std::max(scale, 1.0))
            throw std::runtime_error(
                "steady-state system is singular; no unique steady state");
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double w = a[i][k] / a[k][k];
            if (w == 0.0)
                continue;
            for (std::size_t j = k; j < n; ++j)
                a[i][j] -= w * a[k][j];
            b[i] -= w * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

SteadyCoeffs base_coeffs(const Layer& l) {
    SteadyCoeffs c;
    c.x_left = l.x_left;
    c.x_right = l.x_right;
    const double D = l.dispersion, v = l.velocity, mu = l.decay,
                 g = l.production;
    if (mu > 0.0) {
        double disc = std::sqrt(v * v + 4.0 * D * mu);
        c.r1 = (v + disc) / (2.0 * D);
        c.r2 = (v - disc) / (2.0 * D);
        c.p0 = g / mu;
    } else if (v != 0.0) {
        c.r1 = std::max(v / D, 0.0);
        c.r2 = std::min(v / D, 0.0);
        c.p1 = g / v;
    } else {
        c.degenerate = true;
        c.p2 = -g / (2.0 * D);
    }
    return c;
}

// Homogeneous basis values/derivatives at x for the assembly below.
void basis(const SteadyCoeffs& c, double x, double& f1, double& f2, double& d1,
           double& d2) {
    if (c.degenerate) {
        f1 = 1.0;
        f2 = x - c.x_left;
        d1 = 0.0;
        d2 = 1.0;
        return;
    }
    f1 = std::exp(c.r1 * (x - c.x_right));
    f2 = std::exp(c.r2 * (x - c.x_left));
    d1 = c.r1 * f1;
    d2 = c.r2 * f2;
}

double particular(const SteadyCoeffs& c, double x) {
    return c.p0 + c.p1 * x + c.p2 * x * x;
}

double particular_deriv(const SteadyCoeffs& c, double x) {
    return c.p1 + 2.0 * c.p2 * x;
}

} // namespace

SteadySolution solve_steady(const Problem& problem) {
    const std::size_t m = problem.layers.size();
    std::vector<SteadyCoeffs> coeffs;
    coeffs.reserve(m);
    for (const Layer& l : problem.layers)
        coeffs.push_back(base_coeffs(l));

    const std::size_t n = 2 * m;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    auto col = [](std::size_t layer) { return 2 * layer; };

    // Inlet: a0*c(0) - b0*c'(0) = g0(inf)
    {
        double f1, f2, d1, d2;
        basis(coeffs[0], 0.0, f1, f2, d1, d2);
        const RobinBoundary& bc = problem.inlet;
        a[0][col(0)] = bc.a * f1 - bc.b * d1;
        a[0][col(0) + 1] = bc.a * f2 - bc.b * d2;
        b[0] = bc.signal.terminal() - bc.a * particular(coeffs[0], 0.0)
               + bc.b * particular_deriv(coeffs[0], 0.0);
    }
    // Interface rows: concentration and dispersive-flux continuity.
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double ell = problem.layers[i].x_right;
        const double thD_l =
            problem.layers[i].water_content * problem.layers[i].dispersion;
        const double thD_r = problem.layers[i + 1].water_content
                             * problem.layers[i + 1].dispersion;
        double lf1, lf2, ld1, ld2, rf1, rf2, rd1, rd2;
        basis(coeffs[i], ell, lf1, lf2, ld1, ld2);
        basis(coeffs[i + 1], ell, rf1, rf2, rd1, rd2);
        std::size_t rc = 1 + 2 * i;
        a[rc][col(i)] = lf1;
        a[rc][col(i) + 1] = lf2;
        a[rc][col(i + 1)] = -rf1;
        a[rc][col(i + 1) + 1] = -rf2;
        b[rc] = particular(coeffs[i + 1], ell) - particular(coeffs[i], ell);
        std::size_t rq = rc + 1;
        a[rq][col(i)] = thD_l * ld1;
        a[rq][col(i) + 1] = thD_l * ld2;
        a[rq][col(i + 1)] = -thD_r * rd1;
        a[rq][col(i + 1) + 1] = -thD_r * rd2;
        b[rq] = thD_r * particular_deriv(coeffs[i + 1], ell)
                - thD_l * particular_deriv(coeffs[i], ell);
    }
    // Outlet: aL*c(L) + bL*c'(L) = gL(inf)
    {
        const double L = problem.length();
        double f1, f2, d1, d2;
        basis(coeffs[m - 1], L, f1, f2, d1, d2);
        const RobinBoundary& bc = problem.outlet;
        a[n - 1][col(m - 1)] = bc.a * f1 + bc.b * d1;
        a[n - 1][col(m - 1) + 1] = bc.a * f2 + bc.b * d2;
        b[n - 1] = bc.signal.terminal() - bc.a * particular(coeffs[m - 1], L)
                   - bc.b * particular_deriv(coeffs[m - 1], L);
    }

    std::vector<double> sol = lu_solve(std::move(a), std::move(b));
    for (std::size_t i = 0; i < m; ++i) {
        coeffs[i].amp1 = sol[col(i)];
        coeffs[i].amp2 = sol[col(i) + 1];
    }
    return SteadySolution(std::move(coeffs));
}

} // namespace adr
