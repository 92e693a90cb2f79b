// Eigenvalues of scaling step-chain quantum graphs: secular polynomials,
// separator/zone root search, prime-orbit enumeration, and the explicit
// periodic-orbit expansion, driven by a JSON experiment config.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgraph/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"scaling quantum graph spectra via periodic orbits"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    std::string out_path;
    std::string format;
    double tol = -1.0;
    int threads = 0;
    bool grouped = false;

    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_option("--tol", tol, "root-finding relative tolerance");
    app.add_option("--threads", threads, "worker threads for orbit sums");

    CLI::App* regularity = app.add_subcommand("regularity", "alpha, zone width, gamma");
    CLI::App* roots = app.add_subcommand("roots", "eigenvalues by bracketed bisection");
    CLI::App* orbits = app.add_subcommand("orbits", "prime periodic orbits");
    CLI::App* solve = app.add_subcommand("solve", "one eigenvalue via the orbit expansion");
    CLI::App* converge = app.add_subcommand("converge", "error vs orbit-length cutoff scan");
    orbits->add_flag("--grouped", grouped, "emit (n1,n2,j) classes instead of words");
    solve->add_flag("--grouped", grouped, "use the grouped class path");
    converge->add_flag("--grouped", grouped, "use the grouped class path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : qgraph::kExitConfig;
    }

    if (config_path.empty()) {
        std::cerr << "error: --config is required (the system lives there)\n";
        return qgraph::kExitConfig;
    }

    nlohmann::json j;
    {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot open config " << config_path << '\n';
            return qgraph::kExitConfig;
        }
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << '\n';
            return qgraph::kExitConfig;
        }
    }

    qgraph::ExperimentConfig cfg;
    try {
        cfg = qgraph::experiment_from_json(j);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qgraph::kExitConfig;
    }

    for (CLI::App* sub : {regularity, roots, orbits, solve, converge})
        if (sub->parsed())
            cfg.task = sub->get_name();
    if (!out_path.empty())
        cfg.out = out_path;
    if (!format.empty())
        cfg.format = format;
    if (tol > 0.0)
        cfg.tol = tol;
    if (threads > 0)
        cfg.threads = threads;
    if (grouped)
        cfg.expansion.use_grouped = true;

    return qgraph::run(cfg, std::cerr);
}
