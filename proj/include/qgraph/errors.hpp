#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

// A zone/separator/expansion operation was invoked on a system with alpha >= 1.
struct NonRegularError : std::runtime_error {
    explicit NonRegularError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical guarantee failed at runtime (lost bracket, first-root scan
// exhausted, gamma assertion violated). Always a hard failure, never skipped.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qgraph
