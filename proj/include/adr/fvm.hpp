#pragma once

#include "adr/model.hpp"

namespace adr {

/// Uniform node-centred grid; a node must land on every layer interface.
struct FvmGrid {
    int n = 0;
    double h = 0.0;
    std::vector<double> x;
    /// Layer index used for node k's fluxes; interface nodes keep the left
    /// layer here and are additionally listed in `interface_at`.
    std::vector<int> layer;
    /// interface index i (0-based, between layers i and i+1) for interface
    /// nodes, -1 elsewhere.
    std::vector<int> interface_at;

    /// Throws std::invalid_argument (with a suggested node count) when the
    /// interfaces do not align with the grid.
    static FvmGrid build(const Problem& problem, int n);
};

enum class MassForm { identity, drop_first, drop_last, drop_both };

struct FvmState {
    std::vector<double> c; // nodal concentrations
    MassForm mass = MassForm::identity;
    double t = 0.0;
};

/// Initial nodal vector: layer values in the interior, arithmetic mean at
/// interface nodes.
FvmState fvm_initial(const Problem& problem, int n);

/// Full right-hand side F(c, t), including the algebraic residual rows
/// a*c - g(t) at ends where the mass matrix row is dropped.
std::vector<double> fvm_rhs(const Problem& problem, const FvmGrid& grid,
                            const std::vector<double>& c, double t);

/// Method-of-lines reference solution with an adaptive L-stable one-step
/// integrator (TR-BDF2, rtol 1e-8, atol 1e-10). Step boundary signals
/// restart the integration at the discontinuity.
SolutionGrid fvm_solve(const Problem& problem, int n,
                       const std::vector<double>& t_values);

} // namespace adr
