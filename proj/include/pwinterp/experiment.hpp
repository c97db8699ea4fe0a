#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pwinterp/analysis.hpp"

namespace pwinterp {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitFail = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
};

/// A fully validated experiment plan.
struct ExperimentConfig {
    std::string kernel;
    std::vector<double> ladder;
    /// Parameter for reconstruct; defaults to the first ladder entry.
    double alpha = 0.0;

    std::optional<NodeSequence> nodes;
    std::optional<PWSignal> signal;
    nlohmann::json signal_spec;

    double probe_step = 0.25;
    double interior_fraction = 0.75;
    double dense_step = 0.05;

    SolveOptions solve;
    CertifyOptions certify;
    bool measure_truncation = true;
    double truncation_factor = 10.0;
    double stability_factor = 3.0;

    std::string output_directory = "out";
};

/// Default ladder of a family when the config gives none.
std::vector<double> default_ladder(std::string_view kernel);

/// Validates a parsed document; throws ConfigError naming the field path.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads and validates a config file; syntax errors carry line and column.
ExperimentConfig load_config(const std::string& path);

struct RunOptions {
    std::optional<std::string> out_dir;  ///< overrides the config's output directory
    int threads = 1;
    bool verbose = false;
    std::ostream* log = nullptr;         ///< diagnostics; std::cerr when null
};

/// Each command writes its files and returns an ExitCode. Errors propagate
/// as exceptions; run_command maps them to exit statuses.
int cmd_certify(const ExperimentConfig& config, const RunOptions& options);
int cmd_reconstruct(const ExperimentConfig& config, const RunOptions& options);
int cmd_sweep(const ExperimentConfig& config, const RunOptions& options);

/// load_config + dispatch on "certify" | "reconstruct" | "sweep".
int run_command(std::string_view command, const std::string& config_path, const RunOptions& options);

}  // namespace pwinterp
