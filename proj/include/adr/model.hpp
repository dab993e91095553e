#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace adr {

using Complex = std::complex<double>;

/// One homogeneous slab of the layered medium.
struct Layer {
    double x_left = 0.0;        // cm
    double x_right = 0.0;       // cm
    double retardation = 1.0;   // R [-]
    double dispersion = 0.0;    // D [cm^2/day]
    double velocity = 0.0;      // v [cm/day]
    double decay = 0.0;         // mu [1/day]
    double production = 0.0;    // gamma [kg cm^-3 day^-1]
    double water_content = 0.0; // theta [-]
    double initial = 0.0;       // f [kg/cm^3]

    double width() const { return x_right - x_left; }
};

enum class SignalKind { zero, constant, heaviside_step, ramp_exp };

/// Boundary signal g(t) with a known closed-form Laplace transform G(s).
///
/// The set of forms is a closed enumeration: the inversion pipeline relies
/// on the transform being exact.
struct TransientSignal {
    SignalKind kind = SignalKind::zero;
    double c0 = 0.0;    // amplitude
    double t0 = 0.0;    // step switch-off time [day]
    double alpha = 0.0; // ramp rate [1/day]
    double beta = 0.0;  // exponential decay rate [1/day]

    static TransientSignal zero();
    static TransientSignal constant(double c0);
    static TransientSignal step(double c0, double t0); // requires t0 > 0
    static TransientSignal ramp_exp(double c0, double alpha, double beta);

    double value(double t) const;
    /// Exact Laplace transform. Throws std::domain_error for real s <= 0.
    Complex transform(Complex s) const;
    /// lim_{t->inf} g(t); used by the steady-state solver.
    double terminal() const;
};

/// a*c -/+ b*c' = g(t) at the inlet/outlet (sign fixed by the boundary side).
struct RobinBoundary {
    double a = 0.0;
    double b = 0.0;
    TransientSignal signal;
};

struct Problem {
    std::vector<Layer> layers; // ordered, tiling [0, L]
    RobinBoundary inlet;
    RobinBoundary outlet;

    double length() const { return layers.back().x_right; }
    /// Index of the layer containing x; interface points resolve to the
    /// left layer.
    std::size_t layer_index(double x) const;
};

/// Diagnostic invariant check. Returns one message per violation (empty if
/// the problem is well formed). Non-fatal conditions are prefixed
/// "warning:".
std::vector<std::string> validate(const Problem& problem);

/// True if any entry of validate() output is a hard error (not a warning).
bool has_errors(const std::vector<std::string>& violations);

enum class Provenance { semi_analytical, fvm, steady_state };

struct SolutionGrid {
    std::vector<double> x;                   // cm
    std::vector<double> t;                   // day
    std::vector<std::vector<double>> values; // [time][position]
    Provenance provenance = Provenance::semi_analytical;
};

/// A catalogued test problem plus its recommended evaluation grid.
struct CaseSpec {
    Problem problem;
    std::vector<double> x_grid;
    std::vector<double> t_values;
    double c0 = 1.0; // normalization; outputs are relative concentrations
};

/// The built-in library of test cases 1..13. Throws std::invalid_argument
/// for an unknown id.
CaseSpec case_library(int case_id);

} // namespace adr
