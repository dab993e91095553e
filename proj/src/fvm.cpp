#include "adr/fvm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adr {

namespace {

bool aligned(double ell, double h, double L) {
    double k = std::round(ell / h);
    return std::abs(k * h - ell) <= 1e-12 * L;
}

bool grid_fits(const Problem& problem, int n) {
    const double L = problem.length();
    const double h = L / (n - 1);
    for (std::size_t i = 0; i + 1 < problem.layers.size(); ++i)
        if (!aligned(problem.layers[i].x_right, h, L))
            return false;
    return true;
}

} // namespace

FvmGrid FvmGrid::build(const Problem& problem, int n) {
    if (n < 3)
        throw std::invalid_argument("FVM grid needs at least 3 nodes");
    if (!grid_fits(problem, n)) {
        int suggestion = 0;
        for (int cand = n + 1; cand <= n + 100000; ++cand) {
            if (grid_fits(problem, cand)) {
                suggestion = cand;
                break;
            }
        }
        std::ostringstream msg;
        msg << "grid with n = " << n << " nodes misses a layer interface";
        if (suggestion > 0)
            msg << "; nearest valid node count is n = " << suggestion;
        throw std::invalid_argument(msg.str());
    }
    FvmGrid g;
    g.n = n;
    const double L = problem.length();
    g.h = L / (n - 1);
    g.x.resize(n);
    g.layer.resize(n);
    g.interface_at.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        g.x[k] = k * g.h;
        g.layer[k] = static_cast<int>(problem.layer_index(g.x[k]));
    }
    for (std::size_t i = 0; i + 1 < problem.layers.size(); ++i) {
        int k = static_cast<int>(std::round(problem.layers[i].x_right / g.h));
        g.interface_at[k] = static_cast<int>(i);
    }
    return g;
}

FvmState fvm_initial(const Problem& problem, int n) {
    FvmGrid grid = FvmGrid::build(problem, n);
    FvmState state;
    state.c.resize(n);
    state.t = 0.0;
    const auto& layers = problem.layers;
    state.c.front() = layers.front().initial;
    state.c.back() = layers.back().initial;
    for (int k = 1; k + 1 < n; ++k) {
        int i = grid.interface_at[k];
        if (i >= 0)
            state.c[k] = 0.5 * (layers[i].initial + layers[i + 1].initial);
        else
            state.c[k] = layers[grid.layer[k]].initial;
    }
    const bool b0 = problem.inlet.b != 0.0;
    const bool bL = problem.outlet.b != 0.0;
    state.mass = b0 ? (bL ? MassForm::identity : MassForm::drop_last)
                    : (bL ? MassForm::drop_first : MassForm::drop_both);
    return state;
}

std::vector<double> fvm_rhs(const Problem& problem, const FvmGrid& grid,
                            const std::vector<double>& c, double t) {
    const int n = grid.n;
    const double h = grid.h;
    const auto& layers = problem.layers;
    auto flux = [&](int layer, int k) {
        // J_{i,k}: face between nodes k-1 and k using layer i coefficients
        const Layer& l = layers[layer];
        return l.dispersion * (c[k] - c[k - 1]) / h
               - l.velocity * 0.5 * (c[k - 1] + c[k]);
    };
    auto source = [&](int layer, int k) {
        return -layers[layer].decay * c[k] + layers[layer].production;
    };

    std::vector<double> F(n);
    const RobinBoundary& in = problem.inlet;
    const RobinBoundary& out = problem.outlet;
    const Layer& first = layers.front();
    const Layer& last = layers.back();

    if (in.b == 0.0) {
        F[0] = in.a * c[0] - in.signal.value(t);
    } else {
        F[0] = (flux(0, 1) + first.dispersion / in.b * in.signal.value(t)
                + (first.velocity - first.dispersion * in.a / in.b) * c[0]
                + 0.5 * h * source(0, 0))
               / (0.5 * h * first.retardation);
    }
    for (int k = 1; k + 1 < n; ++k) {
        int i = grid.interface_at[k];
        if (i >= 0) {
            const Layer& ll = layers[i];
            const Layer& lr = layers[i + 1];
            double thl = ll.water_content, thr = lr.water_content;
            F[k] = (thr * flux(i + 1, k + 1) - thl * flux(i, k)
                    + 0.5 * h
                          * (thl * (-ll.decay * c[k] + ll.production)
                             + thr * (-lr.decay * c[k] + lr.production)))
                   / (0.5 * h * (thl * ll.retardation + thr * lr.retardation));
        } else {
            int i2 = grid.layer[k];
            F[k] = (flux(i2, k + 1) - flux(i2, k) + h * source(i2, k))
                   / (h * layers[i2].retardation);
        }
    }
    if (out.b == 0.0) {
        F[n - 1] = out.a * c[n - 1] - out.signal.value(t);
    } else {
        F[n - 1] = (last.dispersion / out.b * out.signal.value(t)
                    - (last.velocity + last.dispersion * out.a / out.b) * c[n - 1]
                    - flux(static_cast<int>(layers.size()) - 1, n - 1)
                    + 0.5 * h * source(static_cast<int>(layers.size()) - 1, n - 1))
                   / (0.5 * h * last.retardation);
    }
    return F;
}

namespace {

// Linear method-of-lines system dc/dt = T c + r(t) over the differential
// unknowns, with Dirichlet-type (b = 0) end nodes eliminated algebraically.
struct LinearSystem {
    int n_total = 0;
    int lo = 0;        // first differential node
    int hi = 0;        // last differential node (inclusive)
    std::vector<double> sub, diag, sup; // T over unknowns
    std::vector<double> r_const;
    std::vector<double> r_g0, r_gL; // couplings to the boundary signals
    const Problem* problem = nullptr;

    int size() const { return hi - lo + 1; }

    std::vector<double> r(double t) const {
        std::vector<double> out(r_const);
        double g0 = problem->inlet.signal.value(t);
        double gL = problem->outlet.signal.value(t);
        for (int i = 0; i < size(); ++i)
            out[i] += r_g0[i] * g0 + r_gL[i] * gL;
        return out;
    }

    std::vector<double> apply(const std::vector<double>& c) const {
        const int m = size();
        std::vector<double> out(m, 0.0);
        for (int i = 0; i < m; ++i) {
            out[i] = diag[i] * c[i];
            if (i > 0)
                out[i] += sub[i] * c[i - 1];
            if (i + 1 < m)
                out[i] += sup[i] * c[i + 1];
        }
        return out;
    }
};

LinearSystem build_system(const Problem& problem, const FvmGrid& grid) {
    LinearSystem sys;
    sys.problem = &problem;
    sys.n_total = grid.n;
    const bool drop0 = problem.inlet.b == 0.0;
    const bool dropL = problem.outlet.b == 0.0;
    sys.lo = drop0 ? 1 : 0;
    sys.hi = dropL ? grid.n - 2 : grid.n - 1;
    const int m = sys.size();
    sys.sub.assign(m, 0.0);
    sys.diag.assign(m, 0.0);
    sys.sup.assign(m, 0.0);
    sys.r_const.assign(m, 0.0);
    sys.r_g0.assign(m, 0.0);
    sys.r_gL.assign(m, 0.0);

    const double h = grid.h;
    const auto& layers = problem.layers;
    const RobinBoundary& in = problem.inlet;
    const RobinBoundary& out = problem.outlet;

    // Coefficients of F_k as a function of (c_{k-1}, c_k, c_{k+1}) plus an
    // affine part; boundary-adjacent rows fold the eliminated node's value
    // g(t)/a into the signal couplings.
    for (int k = sys.lo; k <= sys.hi; ++k) {
        const int i = k - sys.lo;
        double cl = 0.0, cd = 0.0, cu = 0.0, cc = 0.0, cg0 = 0.0, cgL = 0.0;
        if (k == 0) { // Robin inlet row (b0 != 0)
            const Layer& l = layers.front();
            const double den = 0.5 * h * l.retardation;
            cd = (-l.dispersion / h + 0.5 * l.velocity
                  - l.dispersion * in.a / in.b - 0.5 * h * l.decay)
                 / den;
            cu = (l.dispersion / h - 0.5 * l.velocity) / den;
            cg0 = (l.dispersion / in.b) / den;
            cc = l.production / l.retardation;
        } else if (k == grid.n - 1) { // Robin outlet row (bL != 0)
            const Layer& l = layers.back();
            const double den = 0.5 * h * l.retardation;
            cd = (-l.velocity - l.dispersion * out.a / out.b - l.dispersion / h
                  + 0.5 * l.velocity - 0.5 * h * l.decay)
                 / den;
            cl = (l.dispersion / h + 0.5 * l.velocity) / den;
            cgL = (l.dispersion / out.b) / den;
            cc = l.production / l.retardation;
        } else if (grid.interface_at[k] >= 0) {
            const int ii = grid.interface_at[k];
            const Layer& ll = layers[ii];
            const Layer& lr = layers[ii + 1];
            const double thl = ll.water_content, thr = lr.water_content;
            const double den =
                0.5 * h * (thl * ll.retardation + thr * lr.retardation);
            cl = thl * (ll.dispersion / h + 0.5 * ll.velocity) / den;
            cu = thr * (lr.dispersion / h - 0.5 * lr.velocity) / den;
            cd = (-thr * lr.dispersion / h - 0.5 * thr * lr.velocity
                  - thl * ll.dispersion / h + 0.5 * thl * ll.velocity
                  - 0.5 * h * (thl * ll.decay + thr * lr.decay))
                 / den;
            cc = 0.5 * h * (thl * ll.production + thr * lr.production) / den;
        } else {
            const Layer& l = layers[grid.layer[k]];
            const double den = h * l.retardation;
            cl = (l.dispersion / h + 0.5 * l.velocity) / den;
            cu = (l.dispersion / h - 0.5 * l.velocity) / den;
            cd = (-2.0 * l.dispersion / h - h * l.decay) / den;
            cc = l.production / l.retardation;
        }
        // fold eliminated neighbours: c_0 = g0/a0, c_{n-1} = gL/aL
        if (k - 1 < sys.lo && k > 0) {
            cg0 += cl / in.a;
            cl = 0.0;
        }
        if (k + 1 > sys.hi && k < grid.n - 1) {
            cgL += cu / out.a;
            cu = 0.0;
        }
        sys.sub[i] = cl;
        sys.diag[i] = cd;
        sys.sup[i] = cu;
        sys.r_const[i] = cc;
        sys.r_g0[i] = cg0;
        sys.r_gL[i] = cgL;
    }
    return sys;
}

// Solve (I - a*T) x = b with the Thomas algorithm.
std::vector<double> solve_shifted(const LinearSystem& sys, double a,
                                  std::vector<double> b) {
    const int m = sys.size();
    std::vector<double> diag(m), sup(m);
    for (int i = 0; i < m; ++i) {
        diag[i] = 1.0 - a * sys.diag[i];
        sup[i] = -a * sys.sup[i];
    }
    for (int i = 1; i < m; ++i) {
        double w = (-a * sys.sub[i]) / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        b[i] -= w * b[i - 1];
    }
    std::vector<double> x(m);
    x[m - 1] = b[m - 1] / diag[m - 1];
    for (int i = m - 1; i-- > 0;)
        x[i] = (b[i] - sup[i] * x[i + 1]) / diag[i];
    return x;
}

constexpr double kRtol = 1e-8;
constexpr double kAtol = 1e-10;

// One adaptive TR-BDF2 span [ta, tb]; c is advanced in place.
void integrate_span(const LinearSystem& sys, std::vector<double>& c, double ta,
                    double tb) {
    if (tb <= ta)
        return;
    const int m = sys.size();
    const double gg = 2.0 - std::sqrt(2.0);
    const double d = (1.0 - gg) / (2.0 - gg);
    const double w3 = 1.0 / (gg * (2.0 - gg));
    const double w4 = (1.0 - gg) * (1.0 - gg) / (gg * (2.0 - gg));
    // third-order interpolatory quadrature weights at nodes {0, gg, 1}
    const double e0 = (0.5 - 1.0 / (6.0 * gg)) - 0.5 * (1.0 - d);
    const double e1 = 1.0 / (6.0 * gg * (1.0 - gg)) - 0.5 * (1.0 - d);
    const double e2 = (1.0 / 3.0 - 0.5 * gg) / (1.0 - gg) - d;

    double t = ta;
    double h = std::max((tb - ta) * 1e-6, 1e-12);
    int rejections_in_a_row = 0;
    while (t < tb) {
        h = std::min(h, tb - t);
        auto rn = sys.r(t);
        auto rm = sys.r(t + gg * h);
        auto re = sys.r(t + h);
        auto fn = sys.apply(c);
        for (int i = 0; i < m; ++i)
            fn[i] += rn[i];

        std::vector<double> b1(m);
        for (int i = 0; i < m; ++i)
            b1[i] = c[i] + 0.5 * gg * h * (fn[i] + rm[i]);
        auto cmid = solve_shifted(sys, 0.5 * gg * h, std::move(b1));

        std::vector<double> b2(m);
        for (int i = 0; i < m; ++i)
            b2[i] = w3 * cmid[i] - w4 * c[i] + d * h * re[i];
        auto cend = solve_shifted(sys, d * h, std::move(b2));

        auto fm = sys.apply(cmid);
        auto fe = sys.apply(cend);
        std::vector<double> est(m);
        for (int i = 0; i < m; ++i) {
            fm[i] += rm[i];
            fe[i] += re[i];
            est[i] = h * (e0 * fn[i] + e1 * fm[i] + e2 * fe[i]);
        }
        est = solve_shifted(sys, d * h, std::move(est)); // stiff filter

        double err = 0.0;
        for (int i = 0; i < m; ++i) {
            double sc = kAtol + kRtol * std::max(std::abs(c[i]), std::abs(cend[i]));
            double e = est[i] / sc;
            err += e * e;
        }
        err = std::sqrt(err / m);

        if (err <= 1.0 || h <= 1e-14 * (tb - ta)) {
            t += h;
            c = std::move(cend);
            rejections_in_a_row = 0;
        } else if (++rejections_in_a_row > 60) {
            throw std::runtime_error("FVM time integrator failed to converge");
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -1.0 / 3.0) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
}

} // namespace

SolutionGrid fvm_solve(const Problem& problem, int n,
                       const std::vector<double>& t_values) {
    for (std::size_t i = 1; i < t_values.size(); ++i)
        if (t_values[i] <= t_values[i - 1])
            throw std::invalid_argument("output times must be ascending");
    if (!t_values.empty() && t_values.front() < 0.0)
        throw std::invalid_argument("output times must be non-negative");

    FvmGrid grid = FvmGrid::build(problem, n);
    FvmState state = fvm_initial(problem, n);
    LinearSystem sys = build_system(problem, grid);

    // integration restarts: step-signal switch times inside the span
    std::vector<double> breaks;
    for (const TransientSignal* sig :
         {&problem.inlet.signal, &problem.outlet.signal})
        if (sig->kind == SignalKind::heaviside_step)
            breaks.push_back(sig->t0);

    std::vector<double> c(state.c.begin() + sys.lo,
                          state.c.begin() + sys.hi + 1);

    SolutionGrid out;
    out.x = grid.x;
    out.t = t_values;
    out.provenance = Provenance::fvm;
    out.values.reserve(t_values.size());

    auto emit = [&](double t) {
        std::vector<double> full(grid.n);
        if (sys.lo == 1)
            full[0] = problem.inlet.signal.value(t) / problem.inlet.a;
        if (sys.hi == grid.n - 2)
            full[grid.n - 1] = problem.outlet.signal.value(t) / problem.outlet.a;
        std::copy(c.begin(), c.end(), full.begin() + sys.lo);
        out.values.push_back(std::move(full));
    };

    double t = 0.0;
    for (double target : t_values) {
        // pass through any restart point before the target
        for (double b : breaks)
            if (b > t && b < target) {
                integrate_span(sys, c, t, b);
                t = b;
            }
        integrate_span(sys, c, t, target);
        t = target;
        emit(t);
    }
    return out;
}

} // namespace adr
