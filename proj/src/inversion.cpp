#include "adr/inversion.hpp"

#include "adr/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace adr {

#include "cf_table.inc"

CFQuadrature CFQuadrature::order(int n) {
    switch (n) {
#define ADR_CF_CASE(N)                                                         \
    case N:                                                                    \
        return CFQuadrature(N, std::span<const CFNode>(kCFTableN##N));
        ADR_CF_CASE(2)
        ADR_CF_CASE(4)
        ADR_CF_CASE(6)
        ADR_CF_CASE(8)
        ADR_CF_CASE(10)
        ADR_CF_CASE(12)
        ADR_CF_CASE(14)
        ADR_CF_CASE(16)
        ADR_CF_CASE(18)
        ADR_CF_CASE(20)
        ADR_CF_CASE(22)
        ADR_CF_CASE(24)
        ADR_CF_CASE(26)
        ADR_CF_CASE(28)
        ADR_CF_CASE(30)
        ADR_CF_CASE(32)
#undef ADR_CF_CASE
    default:
        throw std::invalid_argument("inversion order must be even and in 2..32");
    }
}

double invert_transform(const CFQuadrature& quad,
                        const std::function<Complex(Complex)>& transform,
                        double t) {
    if (t <= 0.0)
        throw std::domain_error("inversion requires t > 0");
    Complex acc{};
    for (const CFNode& node : quad.nodes())
        acc += node.residue * transform(node.pole / t);
    return -2.0 / t * acc.real();
}

double advection_indicator(const Problem& problem) {
    double worst = 0.0;
    for (const Layer& l : problem.layers)
        worst = std::max(worst, std::abs(l.velocity) * l.width() / l.dispersion);
    return worst;
}

namespace {

[[noreturn]] void report_overflow(Complex s, double x) {
    std::ostringstream msg;
    msg << "non-finite Laplace sample at s = (" << s.real() << ", " << s.imag()
        << "), x = " << x;
    throw std::runtime_error(msg.str());
}

/// One time row of Eq-(42)-style inversion over all requested positions.
std::vector<double> invert_row(const Problem& problem, const CFQuadrature& quad,
                               const std::vector<double>& xs, double t) {
    std::vector<Complex> acc(xs.size());
    for (const CFNode& node : quad.nodes()) {
        const Complex s = node.pole / t;
        LaplaceSolution sol(problem, s);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            Complex c = sol.at(xs[j]);
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                report_overflow(s, xs[j]);
            acc[j] += node.residue * c;
        }
    }
    std::vector<double> row(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j)
        row[j] = -2.0 / t * acc[j].real();
    return row;
}

struct StepCorrection {
    Problem hat; // zero initial state and production, constant inlet/outlet
    double t0;
};

Problem strip_sources(const Problem& problem) {
    Problem hat = problem;
    for (Layer& l : hat.layers) {
        l.initial = 0.0;
        l.production = 0.0;
    }
    hat.inlet.signal = TransientSignal::zero();
    hat.outlet.signal = TransientSignal::zero();
    return hat;
}

} // namespace

double invert_at(const Problem& problem, const CFQuadrature& quad, double x,
                 double t) {
    return invert_row(problem, quad, {x}, t)[0];
}

SolutionGrid solve_grid(const Problem& problem, const CFQuadrature& quad,
                        std::vector<double> x_values,
                        std::vector<double> t_values) {
    if (advection_indicator(problem) > 100.0)
        std::fprintf(stderr,
                     "warning: advection-dominated transport (indicator %.3g); "
                     "the numerical inversion can be unreliable\n",
                     advection_indicator(problem));

    // Step signals are replaced by their constant counterpart; the switched-off
    // part is subtracted via time-shifted solutions of the source-free problem.
    Problem base = problem;
    std::vector<StepCorrection> corrections;
    if (problem.inlet.signal.kind == SignalKind::heaviside_step) {
        base.inlet.signal = TransientSignal::constant(problem.inlet.signal.c0);
        StepCorrection c{strip_sources(base), problem.inlet.signal.t0};
        c.hat.inlet.signal = TransientSignal::constant(problem.inlet.signal.c0);
        corrections.push_back(std::move(c));
    }
    if (problem.outlet.signal.kind == SignalKind::heaviside_step) {
        base.outlet.signal = TransientSignal::constant(problem.outlet.signal.c0);
        StepCorrection c{strip_sources(base), problem.outlet.signal.t0};
        c.hat.outlet.signal = TransientSignal::constant(problem.outlet.signal.c0);
        corrections.push_back(std::move(c));
    }

    SolutionGrid grid;
    grid.x = std::move(x_values);
    grid.t = std::move(t_values);
    grid.provenance = Provenance::semi_analytical;
    grid.values.assign(grid.t.size(), {});

    auto compute_row = [&](std::size_t i) {
        const double t = grid.t[i];
        if (t < 0.0)
            throw std::domain_error("negative evaluation time");
        if (t == 0.0) {
            std::vector<double> row(grid.x.size());
            for (std::size_t j = 0; j < grid.x.size(); ++j)
                row[j] = problem.layers[problem.layer_index(grid.x[j])].initial;
            grid.values[i] = std::move(row);
            return;
        }
        std::vector<double> row = invert_row(base, quad, grid.x, t);
        for (const StepCorrection& c : corrections) {
            if (t <= c.t0) // left-continuous branch at t == t0
                continue;
            std::vector<double> hat = invert_row(c.hat, quad, grid.x, t - c.t0);
            for (std::size_t j = 0; j < row.size(); ++j)
                row[j] -= hat[j];
        }
        grid.values[i] = std::move(row);
    };

    const std::size_t rows = grid.t.size();
    unsigned workers = std::min<std::size_t>(
        std::max(1u, std::thread::hardware_concurrency()), rows);
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows; ++i)
            compute_row(i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < rows; i += workers)
                        compute_row(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }
    return grid;
}

} // namespace adr
