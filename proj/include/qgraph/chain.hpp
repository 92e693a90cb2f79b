#pragma once

#include <vector>

#include "qgraph/trig_polynomial.hpp"

namespace qgraph {

// One scaling region: potential U(x,k) = lambda * k^2 on a segment of the
// given geometric length. beta = sqrt(1 - lambda) rescales the length into
// the reduced action S = beta * length.
struct Region {
    double length = 0.0;
    double lambda = 0.0;

    double beta() const;
    double action() const; // beta * length
};

// A linear chain of scaling regions with hard (Dirichlet) walls at both ends.
// Immutable after construction; validation happens in make_chain.
struct ScalingChain {
    std::vector<Region> regions;

    double total_action() const; // S0 = sum of region actions, left to right
};

// Two-region chain: a free region of length b followed by a scaled step of
// strength lambda. The classic scaled step potential in a unit box.
struct StepGraph {
    double b = 0.0;
    double lambda = 0.0;

    // derived
    double beta = 0.0;     // sqrt(1 - lambda)
    double action1 = 0.0;  // S1 = b
    double action2 = 0.0;  // S2 = beta * (1 - b)
    double total_action = 0.0; // S0 = S1 + S2
    double reflection = 0.0;   // r = (1 - beta) / (1 + beta)

    ScalingChain to_chain() const;
};

// Validates every length > 0 and every lambda in [0, 1). lambda >= 1 would
// put a classical turning point on the bond; rejected.
ScalingChain make_chain(std::vector<Region> regions);

// Requires 0 < b < 1 and 0 <= lambda < 1.
StepGraph build_step_graph(double b, double lambda);

// Intermediate phasor amplitude*exp(i*action*k) of the transfer-matrix
// expansion; a negative amplitude stands for a phase offset of pi.
struct PhasorTerm {
    double amplitude = 0.0;
    double action = 0.0;
};

// Expands the 2x2 transfer-matrix product over all reflection/transmission
// configurations at the interior vertices into phasor sums and collects the
// result as the normalized secular trig polynomial (leading coefficient 1,
// gamma0 = 1/2). Phasors whose actions agree within 1e-12 * S0 are merged.
TrigPolynomial chain_to_trig_polynomial(const ScalingChain& chain);

// Scale factor between the raw transfer-matrix secular function and the
// normalized polynomial: product of (1 + beta_i/beta_{i+1}) / 2 over the
// interior vertices. Exposed for cross-checks against direct numerical
// evaluation of the determinant.
double secular_leading_scale(const ScalingChain& chain);

} // namespace qgraph
