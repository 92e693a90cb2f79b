#include "qgraph/io.hpp"

#include <cstdio>
#include <ostream>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k)
                ok = true;
        if (!ok)
            throw ConfigError(std::string(where) + ": unknown key \"" + it.key() + "\"");
    }
}

double require_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(std::string(where) + ": missing numeric \"" + key + "\"");
    return j.at(key).get<double>();
}

} // namespace

ScalingChain chain_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw ConfigError("regions: expected a nonempty array");
    std::vector<Region> regions;
    regions.reserve(j.size());
    for (const json& rj : j) {
        if (!rj.is_object())
            throw ConfigError("regions: each region must be an object");
        reject_unknown_keys(rj, {"length", "lambda"}, "region");
        Region r;
        r.length = require_number(rj, "length", "region");
        r.lambda = require_number(rj, "lambda", "region");
        regions.push_back(r);
    }
    try {
        return make_chain(std::move(regions));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("regions: ") + e.what());
    }
}

SystemSpec system_from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("system: expected an object");
    reject_unknown_keys(j, {"step", "regions", "trig"}, "system");
    if (j.size() != 1)
        throw ConfigError("system: give exactly one of \"step\", \"regions\", \"trig\"");

    if (j.contains("step")) {
        const json& sj = j.at("step");
        reject_unknown_keys(sj, {"b", "lambda"}, "step");
        try {
            return build_step_graph(require_number(sj, "b", "step"),
                                    require_number(sj, "lambda", "step"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("step: ") + e.what());
        }
    }
    if (j.contains("regions"))
        return chain_from_json(j.at("regions"));

    const json& tj = j.at("trig");
    reject_unknown_keys(tj, {"S0", "gamma0", "terms"}, "trig");
    TrigPolynomial trig;
    trig.total_action = require_number(tj, "S0", "trig");
    trig.gamma0 = require_number(tj, "gamma0", "trig");
    if (!(trig.total_action > 0.0))
        throw ConfigError("trig: S0 must be positive");
    if (tj.contains("terms")) {
        if (!tj.at("terms").is_array())
            throw ConfigError("trig: terms must be an array");
        for (const json& mj : tj.at("terms")) {
            reject_unknown_keys(mj, {"a", "S", "gamma"}, "trig term");
            TrigTerm t;
            t.amplitude = require_number(mj, "a", "trig term");
            t.action = require_number(mj, "S", "trig term");
            t.gamma = mj.contains("gamma") ? require_number(mj, "gamma", "trig term") : 0.0;
            if (!(t.action >= 0.0) || !(t.action < trig.total_action))
                throw ConfigError("trig: every term action must satisfy 0 <= S < S0");
            trig.terms.push_back(t);
        }
    }
    return trig;
}

TrigPolynomial secular_of(const SystemSpec& system) {
    if (const StepGraph* g = std::get_if<StepGraph>(&system))
        return chain_to_trig_polynomial(g->to_chain());
    if (const ScalingChain* c = std::get_if<ScalingChain>(&system))
        return chain_to_trig_polynomial(*c);
    return std::get<TrigPolynomial>(system);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_records_csv(std::ostream& os, const std::vector<EigenvalueRecord>& records) {
    os << "n,q,k_explicit,k_oracle,eps\n";
    for (const EigenvalueRecord& r : records)
        os << r.n << ',' << r.q << ',' << format_double(r.k_explicit) << ','
           << format_double(r.k_oracle) << ',' << format_double(r.eps) << '\n';
}

json records_to_json(const std::vector<EigenvalueRecord>& records) {
    json rows = json::array();
    for (const EigenvalueRecord& r : records)
        rows.push_back({{"n", r.n},
                        {"q", r.q},
                        {"k_explicit", r.k_explicit},
                        {"k_oracle", r.k_oracle},
                        {"eps", r.eps}});
    return json{{"records", rows}};
}

void write_roots_csv(std::ostream& os, const std::vector<RootRow>& rows) {
    os << "n,sep_lo,sep_hi,k,zone_margin\n";
    for (const RootRow& r : rows)
        os << r.n << ',' << format_double(r.sep_lo) << ',' << format_double(r.sep_hi) << ','
           << format_double(r.k) << ',' << format_double(r.zone_margin) << '\n';
}

json roots_to_json(const std::vector<RootRow>& rows) {
    json out = json::array();
    for (const RootRow& r : rows)
        out.push_back({{"n", r.n},
                       {"sep_lo", r.sep_lo},
                       {"sep_hi", r.sep_hi},
                       {"k", r.k},
                       {"zone_margin", r.zone_margin}});
    return json{{"roots", out}};
}

void write_orbits_csv(std::ostream& os, const std::vector<PrimeOrbit>& orbits) {
    os << "word,q,n1,n2,sigma,tau,chi,S_p,A_p\n";
    for (const PrimeOrbit& p : orbits)
        os << p.word << ',' << p.q << ',' << p.n1 << ',' << p.n2 << ',' << p.sigma << ','
           << p.tau << ',' << p.chi << ',' << format_double(p.action) << ','
           << format_double(p.amplitude) << '\n';
}

json orbits_to_json(const std::vector<PrimeOrbit>& orbits) {
    json out = json::array();
    for (const PrimeOrbit& p : orbits)
        out.push_back({{"word", p.word},
                       {"q", p.q},
                       {"n1", p.n1},
                       {"n2", p.n2},
                       {"sigma", p.sigma},
                       {"tau", p.tau},
                       {"chi", p.chi},
                       {"S_p", p.action},
                       {"A_p", p.amplitude}});
    return json{{"orbits", out}};
}

void write_classes_csv(std::ostream& os, const std::vector<OrbitClass>& classes) {
    os << "q,n1,n2,j,multiplicity,sigma,tau,chi,S_p,A_p\n";
    for (const OrbitClass& c : classes)
        os << c.q << ',' << c.n1 << ',' << c.n2 << ',' << c.j << ','
           << format_double(c.multiplicity) << ',' << c.sigma << ',' << c.tau << ',' << c.chi
           << ',' << format_double(c.action) << ',' << format_double(c.amplitude) << '\n';
}

json classes_to_json(const std::vector<OrbitClass>& classes) {
    json out = json::array();
    for (const OrbitClass& c : classes)
        out.push_back({{"q", c.q},
                       {"n1", c.n1},
                       {"n2", c.n2},
                       {"j", c.j},
                       {"multiplicity", c.multiplicity},
                       {"sigma", c.sigma},
                       {"tau", c.tau},
                       {"chi", c.chi},
                       {"S_p", c.action},
                       {"A_p", c.amplitude}});
    return json{{"classes", out}};
}

void write_regularity_csv(std::ostream& os, const RegularityReport& report,
                          double total_action) {
    os << "alpha,regular,u,gamma,mu,S0\n";
    os << format_double(report.alpha) << ',' << (report.regular ? "true" : "false") << ',';
    if (report.regular)
        os << format_double(report.zone_halfwidth) << ',' << format_double(report.gamma)
           << ',' << report.mu;
    else
        os << ",,";
    os << ',' << format_double(total_action) << '\n';
}

json regularity_to_json(const RegularityReport& report, double total_action) {
    json out{{"alpha", report.alpha}, {"regular", report.regular}, {"S0", total_action}};
    if (report.regular) {
        out["u"] = report.zone_halfwidth;
        out["gamma"] = report.gamma;
        out["mu"] = report.mu;
    } else {
        out["u"] = nullptr;
        out["gamma"] = nullptr;
        out["mu"] = nullptr;
    }
    return out;
}

} // namespace qgraph
