#include "qgraph/experiment.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

using nlohmann::json;

const char* const kTasks[] = {"regularity", "roots", "orbits", "solve", "converge"};

long positive_long(const json& j, const char* key) {
    if (!j.is_number_integer() || j.get<long>() < 1)
        throw ConfigError(std::string(key) + ": expected a positive integer");
    return j.get<long>();
}

std::vector<int> parse_q_list(const json& j) {
    std::vector<int> out;
    if (j.is_array()) {
        for (const json& e : j) {
            if (!e.is_number_integer() || e.get<long>() < 0)
                throw ConfigError("q_list: entries must be integers >= 0");
            out.push_back(e.get<int>());
        }
    } else if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "from" && it.key() != "to")
                throw ConfigError("q_list: unknown key \"" + it.key() + "\"");
        long from = positive_long(j.at("from"), "q_list.from");
        long to = positive_long(j.at("to"), "q_list.to");
        if (to < from)
            throw ConfigError("q_list: to < from");
        for (long q = from; q <= to; ++q)
            out.push_back(static_cast<int>(q));
    } else {
        throw ConfigError("q_list: expected an array or {\"from\",\"to\"}");
    }
    if (out.empty())
        throw ConfigError("q_list: must be nonempty");
    return out;
}

struct TaskOutput {
    std::string payload;
};

TaskOutput run_task(const ExperimentConfig& cfg) {
    std::ostringstream os;
    const bool as_json = cfg.format == "json";

    auto gate_regular = [&](const TrigPolynomial& trig) {
        RegularityReport report = regularity(trig);
        if (!report.regular)
            throw NonRegularError("task \"" + cfg.task + "\" requires a regular system (alpha = " +
                                  format_double(report.alpha) + ")");
        return report;
    };
    auto require_step = [&]() -> const StepGraph& {
        const StepGraph* g = std::get_if<StepGraph>(&cfg.system);
        if (!g)
            throw ConfigError("task \"" + cfg.task +
                              "\" needs a step system; orbit expansions are defined for the "
                              "two-bond step graph only");
        return *g;
    };

    if (cfg.task == "regularity") {
        TrigPolynomial trig = secular_of(cfg.system);
        RegularityReport report = regularity(trig);
        if (as_json)
            os << regularity_to_json(report, trig.total_action).dump(2) << '\n';
        else
            write_regularity_csv(os, report, trig.total_action);
        return {os.str()};
    }

    if (cfg.task == "roots") {
        if (cfg.n_list.empty())
            throw ConfigError("roots: n_list (or n_max) is required");
        TrigPolynomial trig = secular_of(cfg.system);
        RegularityReport report = gate_regular(trig);
        std::vector<RootRow> rows;
        rows.reserve(cfg.n_list.size());
        for (long n : cfg.n_list) {
            RootZone z = root_zone(report, trig.total_action, n);
            RootRow row;
            row.n = n;
            row.sep_lo = z.sep_lo;
            row.sep_hi = z.sep_hi;
            row.k = find_root_in_zone(trig, report, n, cfg.tol);
            row.zone_margin = std::min(row.k - z.zone_lo, z.zone_hi - row.k);
            rows.push_back(row);
        }
        if (as_json)
            os << roots_to_json(rows).dump(2) << '\n';
        else
            write_roots_csv(os, rows);
        return {os.str()};
    }

    if (cfg.task == "orbits") {
        const StepGraph& g = require_step();
        if (cfg.expansion.q_max < 1)
            throw ConfigError("orbits: q_max must be >= 1");
        if (cfg.expansion.use_grouped) {
            std::vector<OrbitClass> classes;
            for (int q = 1; q <= cfg.expansion.q_max; ++q)
                for (const OrbitClass& c : orbit_classes(q, g))
                    classes.push_back(c);
            if (as_json)
                os << classes_to_json(classes).dump(2) << '\n';
            else
                write_classes_csv(os, classes);
        } else {
            if (cfg.expansion.q_max > kEnumerationCap)
                throw ConfigError("orbits: q_max beyond the enumeration cap needs --grouped");
            std::vector<PrimeOrbit> orbits;
            for_each_lyndon_word_up_to(cfg.expansion.q_max, [&](std::string_view w) {
                orbits.push_back(orbit_stats(w, g));
            });
            if (as_json)
                os << orbits_to_json(orbits).dump(2) << '\n';
            else
                write_orbits_csv(os, orbits);
        }
        return {os.str()};
    }

    if (cfg.task == "solve" || cfg.task == "converge") {
        // Regularity gates first: a non-regular system is diagnosed as such
        // even when the system kind would also be rejected.
        TrigPolynomial trig = secular_of(cfg.system);
        gate_regular(trig);
        const StepGraph& g = require_step();

        std::vector<long> ns;
        std::vector<int> qs;
        if (cfg.task == "solve") {
            if (cfg.n < 1)
                throw ConfigError("solve: n (a positive integer) is required");
            if (cfg.expansion.q_max < 1)
                throw ConfigError("solve: q_max must be >= 1");
            ns = {cfg.n};
            qs = {cfg.expansion.q_max};
        } else {
            if (cfg.n_list.empty())
                throw ConfigError("converge: n_list is required");
            if (cfg.q_list.empty())
                throw ConfigError("converge: q_list is required");
            ns = cfg.n_list;
            qs = cfg.q_list;
        }
        std::vector<EigenvalueRecord> records;
        try {
            records = convergence_scan(g, ns, qs, cfg.expansion, cfg.tol, cfg.threads);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (as_json)
            os << records_to_json(records).dump(2) << '\n';
        else
            write_records_csv(os, records);
        return {os.str()};
    }

    throw ConfigError("unknown task \"" + cfg.task + "\"");
}

} // namespace

ExperimentConfig experiment_from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("config: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* known[] = {"system",      "task",    "n",       "n_list",
                                      "n_max",       "q_list",  "q_max",   "nu_max",
                                      "nu_tail_tol", "use_grouped", "tol", "threads",
                                      "out",         "format"};
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k)
                ok = true;
        if (!ok)
            throw ConfigError("config: unknown key \"" + it.key() + "\"");
    }
    if (!j.contains("system"))
        throw ConfigError("config: \"system\" is required");

    ExperimentConfig cfg;
    cfg.system = system_from_json(j.at("system"));
    if (j.contains("task")) {
        if (!j.at("task").is_string())
            throw ConfigError("config: task must be a string");
        cfg.task = j.at("task").get<std::string>();
        bool ok = false;
        for (const char* t : kTasks)
            if (cfg.task == t)
                ok = true;
        if (!ok)
            throw ConfigError("config: unknown task \"" + cfg.task + "\"");
    }
    if (j.contains("n"))
        cfg.n = positive_long(j.at("n"), "n");
    if (j.contains("n_list") && j.contains("n_max"))
        throw ConfigError("config: give n_list or n_max, not both");
    if (j.contains("n_list")) {
        if (!j.at("n_list").is_array() || j.at("n_list").empty())
            throw ConfigError("n_list: expected a nonempty array");
        for (const json& e : j.at("n_list"))
            cfg.n_list.push_back(positive_long(e, "n_list entry"));
    }
    if (j.contains("n_max")) {
        long n_max = positive_long(j.at("n_max"), "n_max");
        for (long n = 1; n <= n_max; ++n)
            cfg.n_list.push_back(n);
    }
    if (j.contains("q_list"))
        cfg.q_list = parse_q_list(j.at("q_list"));
    if (j.contains("q_max"))
        cfg.expansion.q_max = static_cast<int>(positive_long(j.at("q_max"), "q_max"));
    if (j.contains("nu_max"))
        cfg.expansion.nu_max = static_cast<int>(positive_long(j.at("nu_max"), "nu_max"));
    if (j.contains("nu_tail_tol")) {
        if (!j.at("nu_tail_tol").is_number() || j.at("nu_tail_tol").get<double>() < 0.0)
            throw ConfigError("nu_tail_tol: expected a number >= 0");
        cfg.expansion.nu_tail_tol = j.at("nu_tail_tol").get<double>();
    }
    if (j.contains("use_grouped")) {
        if (!j.at("use_grouped").is_boolean())
            throw ConfigError("use_grouped: expected a boolean");
        cfg.expansion.use_grouped = j.at("use_grouped").get<bool>();
    }
    if (j.contains("tol")) {
        if (!j.at("tol").is_number() || !(j.at("tol").get<double>() > 0.0))
            throw ConfigError("tol: expected a positive number");
        cfg.tol = j.at("tol").get<double>();
    }
    if (j.contains("threads"))
        cfg.threads = static_cast<int>(positive_long(j.at("threads"), "threads"));
    if (j.contains("out")) {
        if (!j.at("out").is_string())
            throw ConfigError("out: expected a string");
        cfg.out = j.at("out").get<std::string>();
    }
    if (j.contains("format")) {
        if (!j.at("format").is_string())
            throw ConfigError("format: expected a string");
        cfg.format = j.at("format").get<std::string>();
    }
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format: must be \"csv\" or \"json\"");
    return cfg;
}

int run(const ExperimentConfig& config, std::ostream& diag) {
    try {
        if (config.task.empty())
            throw ConfigError("config: a task is required (subcommand or \"task\" key)");
        TaskOutput result = run_task(config);
        if (config.out.empty()) {
            std::cout << result.payload;
            std::cout.flush();
            if (!std::cout)
                throw NumericalError("failed writing to stdout");
        } else {
            std::ofstream f(config.out, std::ios::binary | std::ios::trunc);
            if (!f)
                throw NumericalError("cannot open output file " + config.out);
            f << result.payload;
            f.flush();
            if (!f)
                throw NumericalError("failed writing output file " + config.out);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        diag << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NonRegularError& e) {
        diag << "error: " << e.what() << '\n';
        return kExitNonRegular;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace qgraph
