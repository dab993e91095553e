#include "adr/laplace.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adr {

namespace {

constexpr double kDegenerateBeta = 1e-300;

[[noreturn]] void degenerate_beta(Complex s) {
    std::ostringstream msg;
    msg << "degenerate layer denominator at s = (" << s.real() << ", "
        << s.imag() << ")";
    throw std::runtime_error(msg.str());
}

} // namespace

std::pair<Complex, Complex> lambda_roots(const Layer& layer, Complex s) {
    if (s.imag() == 0.0 && s.real() <= 0.0)
        throw std::domain_error("lambda_roots requires s off the closed "
                                "negative real axis");
    const double v = layer.velocity, D = layer.dispersion;
    Complex disc = std::sqrt(v * v + 4.0 * D * (layer.retardation * s + layer.decay));
    return {(v + disc) / (2.0 * D), (v - disc) / (2.0 * D)};
}

LayerLaplaceCoeffs::LayerLaplaceCoeffs(const Layer& layer, StackPosition pos,
                                       const RobinBoundary* inlet,
                                       const RobinBoundary* outlet, Complex s)
    : pos_(pos),
      xl_(layer.x_left),
      xr_(layer.x_right),
      theta_D_(layer.water_content * layer.dispersion) {
    auto [l1, l2] = lambda_roots(layer, s);
    l1_ = l1;
    l2_ = l2;
    psi_ = (layer.production / s + layer.retardation * layer.initial)
           / (layer.decay + layer.retardation * s);
    const Complex decay = std::exp(-(l1 - l2) * layer.width());
    switch (pos) {
    case StackPosition::first:
        if (inlet == nullptr)
            throw std::invalid_argument("first-layer coefficients need the inlet");
        ca_ = inlet->a;
        cb_ = inlet->b;
        beta_ = (ca_ - cb_ * l1) * l2 * decay - (ca_ - cb_ * l2) * l1;
        break;
    case StackPosition::middle:
        beta_ = l1 * l2 * (decay - 1.0);
        break;
    case StackPosition::last:
        if (outlet == nullptr)
            throw std::invalid_argument("last-layer coefficients need the outlet");
        ca_ = outlet->a;
        cb_ = outlet->b;
        beta_ = (ca_ + cb_ * l2) * l1 * decay - (ca_ + cb_ * l1) * l2;
        break;
    }
    if (std::abs(beta_) < kDegenerateBeta)
        degenerate_beta(s);
}

Complex LayerLaplaceCoeffs::psi1(double x) const {
    return std::exp(l1_ * (x - xr_));
}

Complex LayerLaplaceCoeffs::psi2(double x) const {
    return std::exp(l2_ * (x - xl_));
}

Complex LayerLaplaceCoeffs::P(double x) const {
    switch (pos_) {
    case StackPosition::first:
        return psi_
               + (ca_ / beta_)
                     * (l1_ * psi2(x) - l2_ * psi2(xr_) * psi1(x)) * psi_;
    case StackPosition::middle:
        return psi_;
    case StackPosition::last:
        return psi_
               + (ca_ / beta_)
                     * (l2_ * psi1(x) - l1_ * psi1(xl_) * psi2(x)) * psi_;
    }
    return {};
}

Complex LayerLaplaceCoeffs::A(double x) const {
    switch (pos_) {
    case StackPosition::first:
        return (l2_ * psi2(xr_) * psi1(x) - l1_ * psi2(x)) / beta_;
    case StackPosition::middle:
        return (l2_ * psi2(xr_) * psi1(x) - l1_ * psi2(x)) / (theta_D_ * beta_);
    case StackPosition::last:
        return ((ca_ + cb_ * l2_) * psi2(xr_) * psi1(x)
                - (ca_ + cb_ * l1_) * psi2(x))
               / (theta_D_ * beta_);
    }
    return {};
}

Complex LayerLaplaceCoeffs::B(double x) const {
    switch (pos_) {
    case StackPosition::first:
        return ((ca_ - cb_ * l1_) * psi1(xl_) * psi2(x)
                - (ca_ - cb_ * l2_) * psi1(x))
               / (theta_D_ * beta_);
    case StackPosition::middle:
        return (l1_ * psi1(xl_) * psi2(x) - l2_ * psi1(x)) / (theta_D_ * beta_);
    case StackPosition::last:
        return (l1_ * psi1(xl_) * psi2(x) - l2_ * psi1(x)) / beta_;
    }
    return {};
}

namespace {

std::vector<LayerLaplaceCoeffs> build_coeffs(const Problem& problem, Complex s) {
    const std::size_t m = problem.layers.size();
    std::vector<LayerLaplaceCoeffs> coeffs;
    coeffs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        StackPosition pos = i == 0 ? StackPosition::first
                            : i == m - 1 ? StackPosition::last
                                         : StackPosition::middle;
        coeffs.emplace_back(problem.layers[i], pos, &problem.inlet,
                            &problem.outlet, s);
    }
    return coeffs;
}

InterfaceSystem assemble_from_coeffs(const Problem& problem,
                                     const std::vector<LayerLaplaceCoeffs>& c,
                                     Complex G0, Complex GL) {
    const std::size_t m = problem.layers.size();
    const std::size_t n = m - 1;
    InterfaceSystem sys;
    sys.sub.assign(n, Complex{});
    sys.diag.assign(n, Complex{});
    sys.sup.assign(n, Complex{});
    sys.rhs.assign(n, Complex{});
    auto ell = [&](std::size_t i) { return problem.layers[i].x_right; };

    sys.diag[0] = c[0].B(ell(0)) - c[1].A(ell(0));
    sys.sup[0] = -c[1].B(ell(0));
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sys.sub[i] = c[i].A(ell(i));
        sys.diag[i] = c[i].B(ell(i)) - c[i + 1].A(ell(i));
        sys.sup[i] = -c[i + 1].B(ell(i));
    }
    sys.sub[n - 1] = c[n - 1].A(ell(n - 1));
    sys.diag[n - 1] = c[n - 1].B(ell(n - 1)) - c[n].A(ell(n - 1));

    sys.rhs[0] = c[1].P(ell(0)) - c[0].P(ell(0)) - c[0].A(ell(0)) * G0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        sys.rhs[i] = c[i + 1].P(ell(i)) - c[i].P(ell(i));
    sys.rhs[n - 1] += c[n].P(ell(n - 1)) - c[n - 1].P(ell(n - 1))
                      + c[n].B(ell(n - 1)) * GL;
    return sys;
}

} // namespace

InterfaceSystem assemble_interface_system(const Problem& problem, Complex s,
                                          Complex G0, Complex GL) {
    if (problem.layers.size() < 3)
        throw std::invalid_argument(
            "interface system requires at least 3 layers; "
            "the two-layer case uses the closed form");
    return assemble_from_coeffs(problem, build_coeffs(problem, s), G0, GL);
}

std::vector<Complex> solve_tridiagonal(const InterfaceSystem& system) {
    const std::size_t n = system.order();
    std::vector<Complex> diag = system.diag;
    std::vector<Complex> rhs = system.rhs;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) == 0.0)
            throw std::runtime_error("tridiagonal solve hit a zero pivot");
        Complex w = system.sub[i] / diag[i - 1];
        diag[i] -= w * system.sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) == 0.0)
        throw std::runtime_error("tridiagonal solve hit a zero pivot");
    std::vector<Complex> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - system.sup[i] * x[i + 1]) / diag[i];
    return x;
}

LaplaceSolution::LaplaceSolution(const Problem& problem, Complex s)
    : problem_(&problem), coeffs_(build_coeffs(problem, s)) {
    const std::size_t m = problem.layers.size();
    const Complex G0 = problem.inlet.signal.transform(s);
    const Complex GL = problem.outlet.signal.transform(s);
    g_.resize(m + 1);
    g_.front() = G0;
    g_.back() = GL;
    const double ell1 = problem.layers[0].x_right;
    if (m == 2) {
        Complex denom = coeffs_[0].B(ell1) - coeffs_[1].A(ell1);
        if (std::abs(denom) < kDegenerateBeta)
            degenerate_beta(s);
        g_[1] = (coeffs_[1].P(ell1) - coeffs_[0].P(ell1)
                 - coeffs_[0].A(ell1) * G0 + coeffs_[1].B(ell1) * GL)
                / denom;
    } else {
        auto sys = assemble_from_coeffs(problem, coeffs_, G0, GL);
        auto sol = solve_tridiagonal(sys);
        for (std::size_t i = 0; i < sol.size(); ++i)
            g_[i + 1] = sol[i];
    }
}

Complex LaplaceSolution::at(double x) const {
    const std::size_t i = problem_->layer_index(x);
    return coeffs_[i].A(x) * g_[i] + coeffs_[i].B(x) * g_[i + 1]
           + coeffs_[i].P(x);
}

Complex laplace_concentration(const Problem& problem, double x, Complex s) {
    return LaplaceSolution(problem, s).at(x);
}

} // namespace adr
