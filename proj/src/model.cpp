#include "adr/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adr {

TransientSignal TransientSignal::zero() { return {}; }

TransientSignal TransientSignal::constant(double c0) {
    TransientSignal s;
    s.kind = SignalKind::constant;
    s.c0 = c0;
    return s;
}

TransientSignal TransientSignal::step(double c0, double t0) {
    if (t0 <= 0.0)
        throw std::invalid_argument("step signal requires t0 > 0");
    TransientSignal s;
    s.kind = SignalKind::heaviside_step;
    s.c0 = c0;
    s.t0 = t0;
    return s;
}

TransientSignal TransientSignal::ramp_exp(double c0, double alpha, double beta) {
    TransientSignal s;
    s.kind = SignalKind::ramp_exp;
    s.c0 = c0;
    s.alpha = alpha;
    s.beta = beta;
    return s;
}

double TransientSignal::value(double t) const {
    switch (kind) {
    case SignalKind::zero:
        return 0.0;
    case SignalKind::constant:
        return c0;
    case SignalKind::heaviside_step:
        return t < t0 ? c0 : 0.0;
    case SignalKind::ramp_exp:
        return c0 * alpha * t * std::exp(-beta * t);
    }
    return 0.0;
}

Complex TransientSignal::transform(Complex s) const {
    if (s.imag() == 0.0 && s.real() <= 0.0)
        throw std::domain_error("signal transform undefined for real s <= 0");
    switch (kind) {
    case SignalKind::zero:
        return {};
    case SignalKind::constant:
        return c0 / s;
    case SignalKind::heaviside_step:
        return c0 * (1.0 - std::exp(-t0 * s)) / s;
    case SignalKind::ramp_exp: {
        Complex d = s + beta;
        return c0 * alpha / (d * d);
    }
    }
    return {};
}

double TransientSignal::terminal() const {
    return kind == SignalKind::constant ? c0 : 0.0;
}

std::size_t Problem::layer_index(double x) const {
    for (std::size_t i = 0; i + 1 < layers.size(); ++i)
        if (x <= layers[i].x_right)
            return i;
    return layers.size() - 1;
}

namespace {

void check_boundary(const RobinBoundary& bc, const char* name,
                    std::vector<std::string>& out) {
    if (bc.b < 0.0)
        out.push_back(std::string(name) + ": coefficient b must be non-negative");
    if (bc.a == 0.0 && bc.b == 0.0)
        out.push_back(std::string(name) + ": coefficients a and b are both zero");
    if (bc.signal.kind == SignalKind::heaviside_step && bc.signal.t0 <= 0.0)
        out.push_back(std::string(name) + ": step signal requires t0 > 0");
}

} // namespace

std::vector<std::string> validate(const Problem& problem) {
    std::vector<std::string> out;
    if (problem.layers.size() < 2)
        out.push_back("problem requires at least 2 layers "
                      "(split a single medium into identical layers)");
    for (std::size_t i = 0; i < problem.layers.size(); ++i) {
        const Layer& l = problem.layers[i];
        std::ostringstream tag;
        tag << "layer " << i << ": ";
        if (!(l.x_left < l.x_right))
            out.push_back(tag.str() + "x_left must be less than x_right");
        if (!(l.retardation > 0.0))
            out.push_back(tag.str() + "retardation must be positive");
        if (!(l.dispersion > 0.0))
            out.push_back(tag.str() + "dispersion must be positive");
        if (!(l.water_content > 0.0))
            out.push_back(tag.str() + "water_content must be positive");
        if (l.decay < 0.0)
            out.push_back("warning: " + tag.str() + "decay is negative");
        if (l.production < 0.0)
            out.push_back("warning: " + tag.str() + "production is negative");
    }
    if (!problem.layers.empty()) {
        if (problem.layers.front().x_left != 0.0)
            out.push_back("layer 0: must start at x = 0");
        for (std::size_t i = 1; i < problem.layers.size(); ++i) {
            double prev = problem.layers[i - 1].x_right;
            double cur = problem.layers[i].x_left;
            if (cur != prev) {
                std::ostringstream msg;
                msg << "layer " << i << ": "
                    << (cur > prev ? "gap" : "overlap")
                    << " in tiling (starts at " << cur
                    << ", previous layer ends at " << prev << ")";
                out.push_back(msg.str());
            }
        }
    }
    check_boundary(problem.inlet, "inlet", out);
    check_boundary(problem.outlet, "outlet", out);
    return out;
}

bool has_errors(const std::vector<std::string>& violations) {
    for (const auto& v : violations)
        if (v.rfind("warning:", 0) != 0)
            return true;
    return false;
}

namespace {

Layer make_layer(double xl, double xr, double R, double D, double v, double mu,
                 double gamma, double theta, double f) {
    Layer l;
    l.x_left = xl;
    l.x_right = xr;
    l.retardation = R;
    l.dispersion = D;
    l.velocity = v;
    l.decay = mu;
    l.production = gamma;
    l.water_content = theta;
    l.initial = f;
    return l;
}

RobinBoundary outlet_zero_gradient() {
    return {0.0, 1.0, TransientSignal::zero()};
}

std::vector<double> linear_grid(double start, double step, double stop) {
    std::vector<double> g;
    for (double x = start; x <= stop + 1e-9 * (stop - start); x += step)
        g.push_back(x);
    return g;
}

} // namespace

CaseSpec case_library(int case_id) {
    constexpr double c0 = 1.0; // tables report c/c0, so work in relative units
    CaseSpec spec;
    Problem& p = spec.problem;
    p.outlet = outlet_zero_gradient();
    spec.x_grid = linear_grid(0.0, 2.0, 20.0);
    spec.t_values = {0.2, 0.4, 0.6, 0.8};

    auto sand = [](double xl, double xr, double f = 0.0) {
        return make_layer(xl, xr, 4.25, 7.0, 10.0, 0.0, 0.0, 0.4, f);
    };
    auto clay = [](double xl, double xr, double f = 0.0) {
        return make_layer(xl, xr, 14.0, 18.0, 8.0, 0.0, 0.0, 0.5, f);
    };

    switch (case_id) {
    case 1:
    case 2:
    case 3:
    case 4: {
        // Homogeneous 30 cm medium posed as two identical layers.
        p.layers = {make_layer(0, 10, 1, 50, 75, 2, 1, 0.4, 0),
                    make_layer(10, 30, 1, 50, 75, 2, 1, 0.4, 0)};
        const double v1 = 75.0, D1 = 50.0, t0 = 0.5;
        switch (case_id) {
        case 1:
            p.inlet = {v1, D1, TransientSignal::constant(v1 * c0)};
            break;
        case 2:
            p.inlet = {v1, D1, TransientSignal::step(v1 * c0, t0)};
            break;
        case 3:
            p.inlet = {1.0, 0.0, TransientSignal::constant(c0)};
            break;
        case 4:
            p.inlet = {1.0, 0.0, TransientSignal::step(c0, t0)};
            break;
        }
        spec.t_values = {1e-3, 0.1, 0.6, 1.0, 2.0, 4.0};
        break;
    }
    case 5:
        p.layers = {make_layer(0, 10, 1, 50, 25, 0, 0, 0.4, 0),
                    make_layer(10, 30, 1, 20, 40, 0, 0, 0.25, 0)};
        p.inlet = {25.0, 50.0, TransientSignal::constant(25.0 * c0)};
        break;
    case 6:
        p.layers = {make_layer(0, 10, 1, 20, 25, 0, 0, 0.4, 0),
                    make_layer(10, 30, 1, 50, 40, 0, 0, 0.25, 0)};
        p.inlet = {25.0, 20.0, TransientSignal::constant(25.0 * c0)};
        break;
    case 7:
        p.layers = {make_layer(0, 10, 1, 20, 40, 0, 0, 0.25, 0),
                    make_layer(10, 30, 1, 50, 25, 0, 0, 0.4, 0)};
        p.inlet = {40.0, 20.0, TransientSignal::constant(40.0 * c0)};
        break;
    case 8:
        p.layers = {make_layer(0, 10, 3, 50, 25, 3, 0, 0.4, 0),
                    make_layer(10, 20, 2, 20, 40, 4, 0, 0.25, 0)};
        p.inlet = {25.0, 50.0, TransientSignal::constant(25.0 * c0)};
        spec.x_grid = linear_grid(0.0, 0.5, 20.0);
        spec.t_values = {0.2, 0.4, 0.6, 0.8, 1000.0};
        break;
    case 9:
    case 10:
        p.layers = {sand(0, 10), clay(10, 12), sand(12, 20), clay(20, 22),
                    sand(22, 30)};
        if (case_id == 9)
            p.inlet = {10.0, 7.0, TransientSignal::constant(10.0 * c0)};
        else
            p.inlet = {10.0, 7.0, TransientSignal::step(10.0 * c0, 3.0)};
        spec.x_grid = linear_grid(0.0, 1.0, 30.0);
        spec.t_values = {2.0, 6.0, 10.0};
        break;
    case 11:
        p.layers = {sand(0, 10), clay(10, 12), sand(12, 20), clay(20, 22),
                    sand(22, 30)};
        p.inlet = {1.0, 0.0, TransientSignal::ramp_exp(c0, 1.0, 1.0)};
        spec.x_grid = linear_grid(0.0, 1.0, 30.0);
        spec.t_values = {2.0, 6.0, 10.0};
        break;
    case 12:
        // Injected slug between x = 14 and x = 18 modelled as an artificial
        // sand layer carrying the nonzero initial condition.
        p.layers = {sand(0, 10),  clay(10, 12), sand(12, 14), sand(14, 18, c0),
                    sand(18, 20), clay(20, 22), sand(22, 30)};
        p.inlet = {0.0, 1.0, TransientSignal::zero()};
        spec.x_grid = linear_grid(0.0, 1.0, 30.0);
        spec.t_values = {2.0, 6.0, 10.0};
        break;
    case 13: {
        p.layers = {sand(0, 10), clay(10, 12), sand(12, 20), clay(20, 22, c0),
                    sand(22, 30)};
        for (auto& l : p.layers) {
            bool is_clay = l.retardation == 14.0;
            l.decay = is_clay ? 2.0 : 3.0;
            l.production = is_clay ? 4.0 : 2.0;
        }
        p.inlet = {10.0, 7.0, TransientSignal::step(10.0 * c0, 3.0)};
        spec.x_grid = linear_grid(0.0, 1.0, 30.0);
        spec.t_values = {2.0, 6.0, 10.0};
        break;
    }
    default:
        throw std::invalid_argument("unknown case id " + std::to_string(case_id)
                                    + " (valid: 1..13)");
    }
    spec.c0 = c0;
    return spec;
}

} // namespace adr
