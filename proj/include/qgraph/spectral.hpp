#pragma once

#include <vector>

#include "qgraph/trig_polynomial.hpp"

namespace qgraph {

// Root-localization geometry of a secular polynomial. alpha = sum |a_i|;
// the graph is regular iff alpha < 1, and then every root is confined to an
// allowed zone of half-width u = arccos(alpha)/S0 between fixed separators
// k_sep(n) = pi*(n + gamma)/S0.
struct RegularityReport {
    double alpha = 0.0;
    bool regular = false;
    double zone_halfwidth = 0.0; // u; only meaningful when regular
    double gamma = 0.0;          // gamma0 + mu; 1/2 for Dirichlet chains
    long mu = 0;                 // integer offset fixing index 1 to the first root
};

// Allowed/forbidden geometry around root number n: the root interval
// [sep_lo, sep_hi], the allowed zone [zone_lo, zone_hi] = interval shrunk by
// u on both sides, and the forbidden neighborhoods (sep +- u).
struct RootZone {
    double sep_lo = 0.0;
    double sep_hi = 0.0;
    double zone_lo = 0.0;
    double zone_hi = 0.0;
};

// Computes alpha and, for regular systems, resolves (mu, gamma) by locating
// the first positive root with a dense scan so that it carries index 1.
RegularityReport regularity(const TrigPolynomial& trig);

// k_sep(n) = pi*(n + gamma)/S0, n >= 0. Throws NonRegularError when the
// report says alpha >= 1.
double separator(const RegularityReport& report, double total_action, long n);

RootZone root_zone(const RegularityReport& report, double total_action, long n);

// The unique root in zone n (n >= 1) by bisection bracketed at the
// separators, where the sign of the secular function is guaranteed. tol is
// relative. Hard NumericalError if the bracket has no sign change or the
// root lands outside its allowed zone.
double find_root_in_zone(const TrigPolynomial& trig, const RegularityReport& report,
                         long n, double tol = 1e-12);

// Spectral staircase N(k): number of positive roots <= k, counted as full
// zones below k plus a root comparison inside the current zone.
long staircase_count(const TrigPolynomial& trig, const RegularityReport& report, double k);

// Exploration fallback that needs no regularity: scans [k_min, k_max] at the
// given spacing and refines every sign change by bisection. Used as the
// independent cross-check of the zone-based search.
std::vector<double> dense_scan_roots(const TrigPolynomial& trig, double k_min, double k_max,
                                     double spacing, double tol = 1e-12);

} // namespace qgraph
