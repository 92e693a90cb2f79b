#pragma once

#include <vector>

#include "qgraph/chain.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

// Truncation of the periodic-orbit eigenvalue expansion. A prime orbit p of
// binary length q_p enters with repetitions nu while nu*q_p <= q_max (a
// nu-fold repetition is itself a periodic orbit of length nu*q_p), subject
// to the additional caps nu <= nu_max and, when nu_tail_tol > 0, a floor on
// the term magnitude bound |A_p|^nu/nu^2 (multiplicity-weighted on the
// grouped path).
struct ExpansionConfig {
    int q_max = 20;
    int nu_max = 50;
    double nu_tail_tol = 0.0;
    bool use_grouped = false;
};

// One point of the convergence study.
struct EigenvalueRecord {
    long n = 0;
    int q = 0;
    double k_explicit = 0.0;
    double k_oracle = 0.0;
    double eps = 0.0; // |k_explicit - k_oracle| / k_oracle
};

// Explicit periodic-orbit value of the n-th momentum eigenvalue:
//
//   k_n = pi*n/S0 - (2/pi) sum_p (1/S_p) sum_nu (A_p^nu / nu^2)
//                      * sin(pi*nu*omega_p/2) * sin(pi*nu*omega_p*n)
//
// truncated per cfg. Terms are accumulated compensated, in the fixed order
// (orbit length ascending, words lexicographic, nu ascending), so results are
// bit-identical across runs and thread counts. Requires a regular system.
double explicit_eigenvalue(const StepGraph& graph, long n, const ExpansionConfig& cfg,
                           int threads = 1);

// One record per (n, q): k_explicit truncated at q, against the bisection
// oracle computed once per n at oracle_tol. Rows come out n-major in n_list
// order, q ascending.
std::vector<EigenvalueRecord> convergence_scan(const StepGraph& graph,
                                               const std::vector<long>& n_list,
                                               const std::vector<int>& q_list,
                                               const ExpansionConfig& cfg,
                                               double oracle_tol = 1e-12, int threads = 1);

// Least-squares slope of log(eps) against log(q) over q in [q_lo, q_hi]
// (q_hi < 0 means the largest q in the records). Records with eps <= 0 are
// excluded; throws if fewer than 10 points remain or the q-span is narrower
// than a factor of 4.
double power_law_fit(const std::vector<EigenvalueRecord>& records, int q_lo = 5,
                     int q_hi = -1);

} // namespace qgraph
