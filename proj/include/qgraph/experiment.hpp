#pragma once

#include <string>

#include <json.hpp>

#include "qgraph/io.hpp"

namespace qgraph {

// Exit codes of run(); also the process exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;     // invalid configuration
inline constexpr int kExitNonRegular = 3; // regularity required but alpha >= 1
inline constexpr int kExitNumerical = 4;  // numerical or output failure

// One experiment: a system, a task, task parameters, and an output sink.
// Everything needed to reproduce an output file lives in this one document.
struct ExperimentConfig {
    SystemSpec system;
    std::string task; // regularity | roots | orbits | solve | converge
    std::vector<long> n_list;
    std::vector<int> q_list;
    long n = 0; // solve
    ExpansionConfig expansion;
    double tol = 1e-12;
    int threads = 1;
    std::string out;            // empty: write to stdout
    std::string format = "csv"; // csv | json
};

// Strict parse: unknown keys anywhere are a ConfigError.
ExperimentConfig experiment_from_json(const nlohmann::json& j);

// Executes the task, writes the artifact, returns an exit code. Errors are
// reported on diag (one human-readable line) rather than thrown.
int run(const ExperimentConfig& config, std::ostream& diag);

} // namespace qgraph
