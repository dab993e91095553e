#include "adr/cli.hpp"

#include "adr/fvm.hpp"
#include "adr/inversion.hpp"
#include "adr/steady.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace adr {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<double> parse_x_spec(const std::string& spec) {
    double start = 0.0, step = 0.0, stop = 0.0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &extra)
            != 3
        || step <= 0.0)
        throw std::runtime_error("bad x grid spec '" + spec
                                 + "' (expected start:step:stop with step > 0)");
    long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (count < 0)
        throw std::runtime_error("empty x grid spec '" + spec + "'");
    std::vector<double> xs(count + 1);
    for (long k = 0; k <= count; ++k)
        xs[k] = start + k * step;
    return xs;
}

ReportMode parse_report_mode(const std::string& name) {
    if (name == "profiles")
        return ReportMode::profiles;
    if (name == "table5")
        return ReportMode::table5;
    if (name == "table-compare")
        return ReportMode::table_compare;
    throw std::runtime_error("unknown report mode '" + name + "'");
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw std::runtime_error("unknown config key " + path + "."
                                     + item.key());
}

double require_number(const json& obj, const std::string& path,
                      const char* key) {
    if (!obj.contains(key))
        throw std::runtime_error("missing config key " + path + "." + key);
    if (!obj[key].is_number())
        throw std::runtime_error("config key " + path + "." + key
                                 + " must be a number");
    return obj[key].get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? obj[key].get<double>() : fallback;
}

TransientSignal parse_signal(const json& obj, const std::string& path) {
    reject_unknown_keys(obj, path, {"type", "c0", "t0", "alpha", "beta"});
    std::string type = obj.value("type", "zero");
    if (type == "zero")
        return TransientSignal::zero();
    if (type == "constant")
        return TransientSignal::constant(require_number(obj, path, "c0"));
    if (type == "step")
        return TransientSignal::step(require_number(obj, path, "c0"),
                                     require_number(obj, path, "t0"));
    if (type == "ramp_exp")
        return TransientSignal::ramp_exp(require_number(obj, path, "c0"),
                                         require_number(obj, path, "alpha"),
                                         require_number(obj, path, "beta"));
    throw std::runtime_error("unknown signal type '" + type + "' at " + path);
}

RobinBoundary parse_boundary(const json& obj, const std::string& path) {
    reject_unknown_keys(obj, path, {"a", "b", "signal"});
    RobinBoundary bc;
    bc.a = require_number(obj, path, "a");
    bc.b = require_number(obj, path, "b");
    if (obj.contains("signal"))
        bc.signal = parse_signal(obj["signal"], path + ".signal");
    return bc;
}

} // namespace

std::pair<Problem, RunConfig> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": "
                                 + e.what());
    }
    reject_unknown_keys(doc, "$", {"layers", "inlet", "outlet", "run"});
    if (!doc.contains("layers") || !doc["layers"].is_array())
        throw std::runtime_error("config requires a 'layers' array");

    Problem problem;
    double cursor = 0.0;
    std::size_t idx = 0;
    for (const auto& lj : doc["layers"]) {
        std::string lpath = "$.layers[" + std::to_string(idx) + "]";
        reject_unknown_keys(lj, lpath,
                            {"x_right", "R", "D", "v", "mu", "gamma", "theta",
                             "f"});
        Layer l;
        l.x_left = cursor;
        l.x_right = require_number(lj, lpath, "x_right");
        l.retardation = number_or(lj, "R", 1.0);
        l.dispersion = require_number(lj, lpath, "D");
        l.velocity = number_or(lj, "v", 0.0);
        l.decay = number_or(lj, "mu", 0.0);
        l.production = number_or(lj, "gamma", 0.0);
        l.water_content = require_number(lj, lpath, "theta");
        l.initial = number_or(lj, "f", 0.0);
        cursor = l.x_right;
        problem.layers.push_back(l);
        ++idx;
    }
    if (!doc.contains("inlet"))
        throw std::runtime_error("config requires an 'inlet' boundary");
    problem.inlet = parse_boundary(doc["inlet"], "$.inlet");
    if (doc.contains("outlet"))
        problem.outlet = parse_boundary(doc["outlet"], "$.outlet");
    else
        problem.outlet = {0.0, 1.0, TransientSignal::zero()}; // zero gradient

    RunConfig cfg;
    cfg.config_path = path;
    if (doc.contains("run")) {
        const json& run = doc["run"];
        reject_unknown_keys(run, "$.run",
                            {"x", "t", "N", "n", "solvers", "output", "report"});
        if (run.contains("x"))
            cfg.x_values = parse_x_spec(run["x"].get<std::string>());
        if (run.contains("t"))
            cfg.t_values = run["t"].get<std::vector<double>>();
        cfg.inversion_order =
            static_cast<int>(number_or(run, "N", cfg.inversion_order));
        cfg.fvm_nodes = static_cast<int>(number_or(run, "n", cfg.fvm_nodes));
        if (run.contains("solvers"))
            cfg.solvers = run["solvers"].get<std::vector<std::string>>();
        if (run.contains("output"))
            cfg.out_dir = run["output"].get<std::string>();
        if (run.contains("report"))
            cfg.report = parse_report_mode(run["report"].get<std::string>());
    }

    auto violations = validate(problem);
    if (has_errors(violations)) {
        std::ostringstream msg;
        msg << "invalid problem in " << path << ":";
        for (const auto& v : violations)
            msg << "\n  " << v;
        throw std::runtime_error(msg.str());
    }
    return {std::move(problem), std::move(cfg)};
}

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_csv(const std::string& file, const SolutionGrid& grid,
               ReportMode mode) {
    std::ofstream out(file, std::ios::binary); // LF endings on every platform
    if (!out)
        throw std::runtime_error("cannot write " + file);
    out << "x";
    char buf[64];
    for (double t : grid.t) {
        std::snprintf(buf, sizeof buf, "%.9g", t);
        out << ",t=" << buf;
    }
    out << "\n";
    const char* fmt = mode == ReportMode::table5 ? "%.3f" : "%.9g";
    for (std::size_t j = 0; j < grid.x.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.9g", grid.x[j]);
        out << buf;
        for (std::size_t i = 0; i < grid.t.size(); ++i) {
            std::snprintf(buf, sizeof buf, fmt, grid.values[i][j]);
            out << ',' << buf;
        }
        out << "\n";
    }
}

std::vector<double> sample_at(const SolutionGrid& grid, std::size_t ti,
                              const std::vector<double>& xs) {
    // grids may differ (FVM uses its own nodes): linear interpolation
    std::vector<double> out(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        double x = xs[j];
        auto it = std::lower_bound(grid.x.begin(), grid.x.end(), x - 1e-12);
        std::size_t k = std::min<std::size_t>(it - grid.x.begin(),
                                              grid.x.size() - 1);
        if (std::abs(grid.x[k] - x) <= 1e-9 || k == 0) {
            out[j] = grid.values[ti][k];
        } else {
            double w = (x - grid.x[k - 1]) / (grid.x[k] - grid.x[k - 1]);
            out[j] = (1.0 - w) * grid.values[ti][k - 1]
                     + w * grid.values[ti][k];
        }
    }
    return out;
}

void write_gnuplot(const std::string& file,
                   const std::vector<std::pair<std::string, std::string>>& data,
                   std::size_t n_times) {
    std::ofstream out(file, std::ios::binary);
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead outside\n"
        << "set xlabel 'x [cm]'\nset ylabel 'c/c0'\n";
    bool first = true;
    for (const auto& [solver, csv] : data) {
        for (std::size_t i = 2; i <= n_times + 1; ++i) {
            out << (first ? "plot " : "replot ") << "'" << csv
                << "' using 1:" << i << " with "
                << (solver == "salt" ? "lines" : "points") << " title '"
                << solver << " ' . columnhead(" << i << ")\n";
            first = false;
        }
    }
    out << "pause -1\n";
}

} // namespace

RunResult run(const RunConfig& config) {
    RunResult result;
    std::vector<std::string> written;
    try {
        Problem problem;
        RunConfig cfg = config;
        if (cfg.case_id != 0) {
            CaseSpec spec = [&] {
                try {
                    return case_library(cfg.case_id);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }();
            problem = spec.problem;
            if (cfg.x_values.empty())
                cfg.x_values = spec.x_grid;
            if (cfg.t_values.empty())
                cfg.t_values = spec.t_values;
            if (cfg.stem.empty())
                cfg.stem = "case" + std::to_string(cfg.case_id);
        } else if (!cfg.config_path.empty()) {
            auto [prob, file_cfg] = [&] {
                try {
                    return parse_config(cfg.config_path);
                } catch (const std::exception& e) {
                    throw ConfigError(e.what());
                }
            }();
            problem = std::move(prob);
            // explicit settings in `config` win over the file's run section
            if (cfg.x_values.empty())
                cfg.x_values = file_cfg.x_values;
            if (cfg.t_values.empty())
                cfg.t_values = file_cfg.t_values;
            if (cfg.solvers.empty() || cfg.solvers == RunConfig{}.solvers)
                cfg.solvers = file_cfg.solvers;
            if (cfg.inversion_order == 14)
                cfg.inversion_order = file_cfg.inversion_order;
            if (cfg.fvm_nodes == 601)
                cfg.fvm_nodes = file_cfg.fvm_nodes;
            if (cfg.out_dir == ".")
                cfg.out_dir = file_cfg.out_dir;
            if (cfg.stem.empty())
                cfg.stem = fs::path(cfg.config_path).stem().string();
        } else {
            throw ConfigError("no problem source: set case_id or config_path");
        }
        if (cfg.solvers.empty())
            throw ConfigError("no solver selected");
        for (const auto& s : cfg.solvers)
            if (s != "salt" && s != "fvm" && s != "steady")
                throw ConfigError("unknown solver '" + s + "'");
        if (cfg.x_values.empty())
            throw ConfigError("empty x grid");
        if (cfg.t_values.empty())
            throw ConfigError("empty t list");

        auto violations = validate(problem);
        if (has_errors(violations)) {
            std::ostringstream msg;
            msg << "invalid problem:";
            for (const auto& v : violations)
                msg << "\n  " << v;
            throw ConfigError(msg.str());
        }
        for (const auto& v : violations)
            std::fprintf(stderr, "%s\n", v.c_str());

        fs::create_directories(cfg.out_dir);
        std::vector<std::pair<std::string, SolutionGrid>> solutions;
        for (const auto& solver : cfg.solvers) {
            SolutionGrid grid;
            if (solver == "salt") {
                auto quad = CFQuadrature::order(cfg.inversion_order);
                grid = solve_grid(problem, quad, cfg.x_values, cfg.t_values);
            } else if (solver == "fvm") {
                grid = fvm_solve(problem, cfg.fvm_nodes, cfg.t_values);
            } else {
                auto steady = solve_steady(problem);
                grid.x = cfg.x_values;
                grid.t = cfg.t_values;
                grid.provenance = Provenance::steady_state;
                std::vector<double> profile(cfg.x_values.size());
                for (std::size_t j = 0; j < cfg.x_values.size(); ++j)
                    profile[j] = steady(cfg.x_values[j]);
                grid.values.assign(cfg.t_values.size(), profile);
            }
            std::string file =
                (fs::path(cfg.out_dir) / (cfg.stem + "_" + solver + ".csv"))
                    .string();
            write_csv(file, grid, cfg.report);
            written.push_back(file);
            solutions.emplace_back(solver, std::move(grid));
        }

        if (cfg.report == ReportMode::table_compare && solutions.size() > 1) {
            std::string file =
                (fs::path(cfg.out_dir) / (cfg.stem + "_compare.csv")).string();
            std::ofstream out(file, std::ios::binary);
            out << "pair,t,max_abs_diff\n";
            char buf[64];
            for (std::size_t a = 0; a < solutions.size(); ++a)
                for (std::size_t b = a + 1; b < solutions.size(); ++b)
                    for (std::size_t i = 0; i < cfg.t_values.size(); ++i) {
                        auto va = sample_at(solutions[a].second, i, cfg.x_values);
                        auto vb = sample_at(solutions[b].second, i, cfg.x_values);
                        double worst = 0.0;
                        for (std::size_t j = 0; j < va.size(); ++j)
                            worst = std::max(worst, std::abs(va[j] - vb[j]));
                        out << solutions[a].first << '-' << solutions[b].first;
                        std::snprintf(buf, sizeof buf, "%.9g", cfg.t_values[i]);
                        out << ',' << buf;
                        std::snprintf(buf, sizeof buf, "%.9g", worst);
                        out << ',' << buf << "\n";
                    }
            written.push_back(file);
        }

        if (cfg.gnuplot) {
            std::vector<std::pair<std::string, std::string>> data;
            for (std::size_t i = 0; i < solutions.size(); ++i)
                data.emplace_back(solutions[i].first, written[i]);
            std::string file =
                (fs::path(cfg.out_dir) / (cfg.stem + ".gp")).string();
            write_gnuplot(file, data, cfg.t_values.size());
            written.push_back(file);
        }

        result.exit_code = 0;
        result.files_written = std::move(written);
    } catch (const ConfigError& e) {
        for (const auto& f : written) {
            std::error_code ec;
            fs::remove(f, ec);
        }
        result.exit_code = 3;
        result.message = e.what();
    } catch (const std::exception& e) {
        for (const auto& f : written) {
            std::error_code ec;
            fs::remove(f, ec);
        }
        result.exit_code = 2;
        result.message = e.what();
    }
    return result;
}

} // namespace adr
