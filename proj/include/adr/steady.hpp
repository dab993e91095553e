#pragma once

#include "adr/model.hpp"

namespace adr {

/// Per-layer pieces of the exact steady-state solution
///   c(x) = p(x) + E1 * exp(r1 * (x - x_right)) + E2 * exp(r2 * (x - x_left))
/// with r1 >= 0 >= r2 the roots of D r^2 - v r - mu = 0 and p the
/// polynomial particular solution. When both roots vanish (v = 0, mu = 0)
/// the homogeneous basis degenerates to {1, x - x_left}.
struct SteadyCoeffs {
    double x_left = 0.0, x_right = 0.0;
    double r1 = 0.0, r2 = 0.0;
    bool degenerate = false; // basis {1, x - x_left} instead of exponentials
    double amp1 = 0.0, amp2 = 0.0;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0; // particular solution p0 + p1 x + p2 x^2

    double value(double x) const;
    double derivative(double x) const;
};

/// Piecewise evaluator for the steady state.
class SteadySolution {
public:
    explicit SteadySolution(std::vector<SteadyCoeffs> layers)
        : layers_(std::move(layers)) {}
    double operator()(double x) const;
    const std::vector<SteadyCoeffs>& layers() const { return layers_; }

private:
    std::vector<SteadyCoeffs> layers_;
};

/// Solve the steady-state analogue of the transport model with boundary
/// signals at their terminal values. Throws std::runtime_error when the
/// steady state is non-unique (e.g. pure Neumann with v = 0, mu = 0).
SteadySolution solve_steady(const Problem& problem);

} // namespace adr
