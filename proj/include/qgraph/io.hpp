#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qgraph/chain.hpp"
#include "qgraph/orbits.hpp"
#include "qgraph/solver.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

// A system is a step graph, a general chain, or a raw secular polynomial
// (the latter for regularity studies of systems given directly by their
// coefficients).
using SystemSpec = std::variant<StepGraph, ScalingChain, TrigPolynomial>;

// {"step":{"b":..,"lambda":..}} | {"regions":[{"length":..,"lambda":..},..]}
// | {"trig":{"S0":..,"gamma0":..,"terms":[{"a":..,"S":..,"gamma":..},..]}}
// Unknown keys are rejected.
SystemSpec system_from_json(const nlohmann::json& j);

ScalingChain chain_from_json(const nlohmann::json& j);

// Secular polynomial of any system kind.
TrigPolynomial secular_of(const SystemSpec& system);

// Lossless decimal rendering of a double (17 significant digits).
std::string format_double(double v);

void write_records_csv(std::ostream& os, const std::vector<EigenvalueRecord>& records);
nlohmann::json records_to_json(const std::vector<EigenvalueRecord>& records);

struct RootRow {
    long n = 0;
    double sep_lo = 0.0;
    double sep_hi = 0.0;
    double k = 0.0;
    double zone_margin = 0.0;
};

void write_roots_csv(std::ostream& os, const std::vector<RootRow>& rows);
nlohmann::json roots_to_json(const std::vector<RootRow>& rows);

void write_orbits_csv(std::ostream& os, const std::vector<PrimeOrbit>& orbits);
nlohmann::json orbits_to_json(const std::vector<PrimeOrbit>& orbits);

void write_classes_csv(std::ostream& os, const std::vector<OrbitClass>& classes);
nlohmann::json classes_to_json(const std::vector<OrbitClass>& classes);

void write_regularity_csv(std::ostream& os, const RegularityReport& report,
                          double total_action);
nlohmann::json regularity_to_json(const RegularityReport& report, double total_action);

} // namespace qgraph
