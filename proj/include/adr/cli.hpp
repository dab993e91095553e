#pragma once

#include "adr/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adr {

enum class ReportMode { profiles, table5, table_compare };

struct RunConfig {
    int case_id = 0; // 0 means "problem comes from a config file"
    std::string config_path;
    std::vector<std::string> solvers = {"salt"}; // subset of salt, fvm, steady
    std::vector<double> x_values; // empty: use the case's recommended grid
    std::vector<double> t_values;
    int inversion_order = 14;
    int fvm_nodes = 601;
    std::string out_dir = ".";
    std::string stem; // output file prefix; defaulted from the source
    ReportMode report = ReportMode::profiles;
    bool gnuplot = false;
};

/// Expand a "start:step:stop" grid specification; stop is included when it
/// lies within 1e-9 of a step multiple.
std::vector<double> parse_x_spec(const std::string& spec);

ReportMode parse_report_mode(const std::string& name);

/// JSON problem + run configuration. Unknown keys are rejected with their
/// path; layer x_left values are inferred by tiling. Throws
/// std::runtime_error with context on malformed input.
std::pair<Problem, RunConfig> parse_config(const std::string& path);

struct RunResult {
    int exit_code = 0; // 0 ok, 2 solver error, 3 config error
    std::string message;
    std::vector<std::string> files_written;
};

/// Resolve the problem (case id or config file), run the selected solvers
/// and write one CSV per solver (plus a comparison report in table-compare
/// mode). Partial outputs are removed on failure.
RunResult run(const RunConfig& config);

} // namespace adr
