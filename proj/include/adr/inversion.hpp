#pragma once

#include "adr/model.hpp"

#include <functional>
#include <span>

namespace adr {

struct CFNode {
    Complex pole;    // z_k
    Complex residue; // w_k
};

/// Poles and residues of the best (N,N) rational approximation to exp(z) on
/// the negative real axis: the N/2 conjugate-pair representatives with
/// positive imaginary part. Constants are tabulated; see
/// scripts/gen_cf_table.py for the generator.
class CFQuadrature {
public:
    /// N even, 2..32. Throws std::invalid_argument otherwise.
    static CFQuadrature order(int n);

    int n() const { return n_; }
    std::span<const CFNode> nodes() const { return nodes_; }

private:
    CFQuadrature(int n, std::span<const CFNode> nodes)
        : n_(n), nodes_(nodes) {}
    int n_;
    std::span<const CFNode> nodes_;
};

/// Inverse Laplace transform of a user transform F at time t > 0:
///   f(t) ~= -(2/t) Re sum_k w_k F(z_k / t).
double invert_transform(const CFQuadrature& quad,
                        const std::function<Complex(Complex)>& transform,
                        double t);

/// Time-domain concentration at one point via the quadrature applied to the
/// Laplace-domain solution. Requires t > 0; step boundary signals must be
/// handled by solve_grid's superposition instead of being passed here.
/// Throws std::runtime_error on non-finite Laplace samples.
double invert_at(const Problem& problem, const CFQuadrature& quad, double x,
                 double t);

/// max_i v_i * width_i / D_i; values above ~100 indicate advection-dominated
/// transport where the inversion can become unreliable.
double advection_indicator(const Problem& problem);

/// Evaluate the concentration on a Cartesian (x, t) grid. Step boundary
/// signals are resolved by superposition of two constant-signal solutions;
/// t = 0 entries return the initial condition directly.
SolutionGrid solve_grid(const Problem& problem, const CFQuadrature& quad,
                        std::vector<double> x_values,
                        std::vector<double> t_values);

} // namespace adr
