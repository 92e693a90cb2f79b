#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qgraph/chain.hpp"

namespace qgraph {

// Orbits are binary words over {'1','2'}; symbol i is one full round trip on
// bond i (vertex -> wall -> vertex). Cyclic neighbors on the same bond mean a
// reflection at the middle vertex, a symbol change means a transmission.
// Direct enumeration is capped here; longer lengths go through OrbitClass.
inline constexpr int kEnumerationCap = 28;

// A prime periodic orbit of the step graph: the Lyndon representative of a
// primitive necklace plus its action data.
//
// amplitude = (-1)^chi * r^sigma * (1-r^2)^(tau/2) with chi = (q + c22) mod 2:
// one wall sign per round trip and one sign per reflection from the steep
// side of the step.
struct PrimeOrbit {
    std::string word;
    int q = 0;  // binary length
    int n1 = 0; // round trips on bond 1
    int n2 = 0;
    int c11 = 0; // cyclic adjacency counts
    int c22 = 0;
    int c12 = 0;
    int c21 = 0;
    int sigma = 0; // reflections at the middle vertex (c11 + c22)
    int tau = 0;   // transmissions (c12 + c21), always even
    int chi = 0;   // sign exponent
    double action = 0.0;    // S_p = 2*(n1*S1 + n2*S2)
    double omega = 0.0;     // S_p / S0
    double amplitude = 0.0; // A_p
};

// All prime orbits sharing (n1, n2, j) have the same action and amplitude;
// j is the number of maximal blocks per symbol, so sigma = q - 2j. The
// multiplicity is the primitive-necklace count of the class, exact below
// 2^53 and correctly rounded above.
struct OrbitClass {
    int q = 0;
    int n1 = 0;
    int n2 = 0;
    int j = 0;
    double multiplicity = 0.0;
    int sigma = 0;
    int tau = 0;
    int chi = 0;
    double action = 0.0;
    double omega = 0.0;
    double amplitude = 0.0;
};

void check_enumeration_length(int q);

// Lyndon words of length exactly q over {'1','2'} in lexicographic order
// (Duval's algorithm). The view passed to the visitor is only valid during
// the call.
template <typename Visitor>
void for_each_lyndon_word(int q, Visitor&& visit) {
    check_enumeration_length(q);
    std::string w;
    w.reserve(static_cast<std::size_t>(q));
    w.push_back('1');
    while (!w.empty()) {
        if (w.size() == static_cast<std::size_t>(q))
            visit(std::string_view(w));
        std::size_t m = w.size();
        while (w.size() < static_cast<std::size_t>(q))
            w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == '2')
            w.pop_back();
        if (!w.empty())
            w.back() = '2';
    }
}

// Lengths 1..q_max, length-major, lexicographic within each length.
template <typename Visitor>
void for_each_lyndon_word_up_to(int q_max, Visitor&& visit) {
    check_enumeration_length(q_max);
    for (int q = 1; q <= q_max; ++q)
        for_each_lyndon_word(q, visit);
}

// Cyclic adjacency counts, sign exponent, action and amplitude of one word.
PrimeOrbit orbit_stats(std::string_view word, const StepGraph& graph);

// Partition of all prime orbits of length q into (n1, n2, j) classes with
// combinatorial multiplicities, ordered by n1 descending then j ascending.
std::vector<OrbitClass> orbit_classes(int q, const StepGraph& graph);

// Moebius function; used for the primitivity correction of class counts.
int mobius(int n);

// Number of binary Lyndon words of length q, (1/q) sum_{d|q} mu(d) 2^(q/d).
double lyndon_count(int q);

} // namespace qgraph
