#pragma once

#include <vector>

#include "qgraph/numeric.hpp"

namespace qgraph {

// One secondary term a*cos(S*k - pi*gamma) of the secular function.
struct TrigTerm {
    double amplitude = 0.0; // a_i
    double action = 0.0;    // S_i, 0 <= S_i < S0
    double gamma = 0.0;     // phase in units of pi
};

// Secular function of a scaling graph in normalized form:
//
//   F(k) = cos(S0*k - pi*gamma0) - sum_i a_i * cos(S_i*k - pi*gamma_i)
//
// S0 is the total reduced action and is strictly the largest action present;
// that ordering is what confines each root to its own zone.
struct TrigPolynomial {
    double total_action = 0.0; // S0
    double gamma0 = 0.0;       // leading phase in units of pi
    std::vector<TrigTerm> terms;

    double phi(double k) const {
        double s = 0.0;
        for (const TrigTerm& t : terms)
            s += t.amplitude * cos_phase(t.action, k, t.gamma);
        return s;
    }

    // F(k); arguments are reduced modulo 2*pi internally, so large k is safe.
    double evaluate(double k) const {
        return cos_phase(total_action, k, gamma0) - phi(k);
    }
};

} // namespace qgraph
