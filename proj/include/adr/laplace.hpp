#pragma once

#include "adr/model.hpp"

#include <utility>

namespace adr {

/// Roots of D*l^2 - v*l - (R*s + mu) = 0 on the principal branch of the
/// complex square root; for Re(s) > 0 the pattern Re(l1) > 0 > Re(l2) holds.
/// Throws std::domain_error for real s <= 0.
std::pair<Complex, Complex> lambda_roots(const Layer& layer, Complex s);

enum class StackPosition { first, middle, last };

/// Per-layer Laplace-domain coefficient functions P, A, B and their
/// building blocks, for one fixed s.
class LayerLaplaceCoeffs {
public:
    /// First-layer variant needs the inlet boundary, last-layer variant the
    /// outlet; unused positions accept nullptr.
    LayerLaplaceCoeffs(const Layer& layer, StackPosition pos,
                       const RobinBoundary* inlet, const RobinBoundary* outlet,
                       Complex s);

    Complex lambda1() const { return l1_; }
    Complex lambda2() const { return l2_; }
    Complex beta() const { return beta_; }
    Complex psi() const { return psi_; }
    Complex psi1(double x) const; // exp(l1*(x - x_right)), anchored at x_right
    Complex psi2(double x) const; // exp(l2*(x - x_left)), anchored at x_left

    Complex P(double x) const;
    Complex A(double x) const;
    Complex B(double x) const;

private:
    StackPosition pos_;
    double xl_, xr_, theta_D_;
    double ca_ = 0.0, cb_ = 0.0; // (a0, b0) or (aL, bL) for end layers
    Complex l1_, l2_, beta_, psi_;
};

/// Complex tridiagonal system for the interface flux transforms
/// [G_1(s), ..., G_{m-1}(s)], order m-1.
struct InterfaceSystem {
    std::vector<Complex> sub;  // a_{i,i-1}, first entry unused
    std::vector<Complex> diag; // a_{i,i}
    std::vector<Complex> sup;  // a_{i,i+1}, last entry unused
    std::vector<Complex> rhs;
    std::size_t order() const { return diag.size(); }
};

/// Continuity conditions C_i(l_i,s) = C_{i+1}(l_i,s) in matrix form.
/// Requires m >= 3 (the two-layer case has a closed form).
InterfaceSystem assemble_interface_system(const Problem& problem, Complex s,
                                          Complex G0, Complex GL);

/// Thomas algorithm. Throws on a vanishing pivot.
std::vector<Complex> solve_tridiagonal(const InterfaceSystem& system);

/// All per-layer coefficients and solved interface transforms for one s,
/// reusable across evaluation positions.
class LaplaceSolution {
public:
    LaplaceSolution(const Problem& problem, Complex s);
    /// C(x, s); interface points evaluate the left layer.
    Complex at(double x) const;

private:
    const Problem* problem_;
    std::vector<LayerLaplaceCoeffs> coeffs_;
    std::vector<Complex> g_; // G_0(s), G_1(s), ..., G_{m-1}(s), G_L(s)
};

Complex laplace_concentration(const Problem& problem, double x, Complex s);

} // namespace adr
