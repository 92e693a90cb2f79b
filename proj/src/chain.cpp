#include "qgraph/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

constexpr std::size_t kMaxRegions = 16; // phasor expansion is 2^N

void shift(std::vector<PhasorTerm>& terms, double delta) {
    for (PhasorTerm& t : terms)
        t.action += delta;
}

std::vector<PhasorTerm> combine(const std::vector<PhasorTerm>& a, double ca,
                                const std::vector<PhasorTerm>& b, double cb) {
    std::vector<PhasorTerm> out;
    out.reserve(a.size() + b.size());
    for (const PhasorTerm& t : a)
        out.push_back({ca * t.amplitude, t.action});
    for (const PhasorTerm& t : b)
        out.push_back({cb * t.amplitude, t.action});
    return out;
}

} // namespace

double Region::beta() const { return std::sqrt(1.0 - lambda); }

double Region::action() const { return beta() * length; }

double ScalingChain::total_action() const {
    double s = 0.0;
    for (const Region& r : regions)
        s += r.action();
    return s;
}

ScalingChain StepGraph::to_chain() const {
    return make_chain({{b, 0.0}, {1.0 - b, lambda}});
}

ScalingChain make_chain(std::vector<Region> regions) {
    if (regions.empty())
        throw std::invalid_argument("chain needs at least one region");
    if (regions.size() > kMaxRegions)
        throw std::invalid_argument("chain exceeds the supported region count (" +
                                    std::to_string(kMaxRegions) + ")");
    for (const Region& r : regions) {
        if (!(r.length > 0.0))
            throw std::invalid_argument("region length must be positive");
        if (!(r.lambda >= 0.0) || !(r.lambda < 1.0))
            throw std::invalid_argument(
                "scaling constant must lie in [0, 1); lambda >= 1 creates a turning point");
        if (!(r.action() > 0.0))
            throw std::invalid_argument("degenerate chain: region of zero action length");
    }
    return ScalingChain{std::move(regions)};
}

StepGraph build_step_graph(double b, double lambda) {
    if (!(b > 0.0) || !(b < 1.0))
        throw std::invalid_argument("step position b must lie in (0, 1)");
    if (!(lambda >= 0.0) || !(lambda < 1.0))
        throw std::invalid_argument(
            "scaling constant must lie in [0, 1); lambda >= 1 creates a turning point");
    StepGraph g;
    g.b = b;
    g.lambda = lambda;
    g.beta = std::sqrt(1.0 - lambda);
    g.action1 = b;
    g.action2 = g.beta * (1.0 - b);
    g.total_action = g.action1 + g.action2;
    g.reflection = (1.0 - g.beta) / (1.0 + g.beta);
    return g;
}

double secular_leading_scale(const ScalingChain& chain) {
    double scale = 1.0;
    for (std::size_t i = 0; i + 1 < chain.regions.size(); ++i) {
        double rho = chain.regions[i].beta() / chain.regions[i + 1].beta();
        scale *= 0.5 * (1.0 + rho);
    }
    return scale;
}

// Dirichlet start (A,B) = (1,-1); at each interior vertex the outgoing pair
// mixes with coefficients (1 +- beta_i/beta_{i+1})/2 while the phasors pick
// up +-S_i. The closing wall contributes the final +-S_N shift. Symmetry
// makes the result 2i * sum_m w_m sin(theta_m k); we collect the sine terms
// and normalize by the leading weight.
TrigPolynomial chain_to_trig_polynomial(const ScalingChain& chain) {
    make_chain(chain.regions); // re-validate; cheap relative to the expansion

    std::vector<PhasorTerm> a_side{{1.0, 0.0}};
    std::vector<PhasorTerm> b_side{{-1.0, 0.0}};
    for (std::size_t i = 0; i + 1 < chain.regions.size(); ++i) {
        double s_i = chain.regions[i].action();
        double rho = chain.regions[i].beta() / chain.regions[i + 1].beta();
        double p = 0.5 * (1.0 + rho);
        double m = 0.5 * (1.0 - rho);
        shift(a_side, s_i);
        shift(b_side, -s_i);
        std::vector<PhasorTerm> a_next = combine(a_side, p, b_side, m);
        std::vector<PhasorTerm> b_next = combine(a_side, m, b_side, p);
        a_side = std::move(a_next);
        b_side = std::move(b_next);
    }
    double s_last = chain.regions.back().action();
    shift(a_side, s_last);
    shift(b_side, -s_last);
    a_side.insert(a_side.end(), b_side.begin(), b_side.end());

    const double s_total = chain.total_action();
    const double merge_tol = 1e-12 * s_total;

    // Collect phasors into sine terms keyed by |action|: c*e^{i*theta*k} and
    // its mirror -c*e^{-i*theta*k} add up to 2i*c*sin(theta*k).
    std::sort(a_side.begin(), a_side.end(), [](const PhasorTerm& x, const PhasorTerm& y) {
        return std::abs(x.action) > std::abs(y.action);
    });

    struct SineTerm {
        double weight;
        double action;
    };
    std::vector<SineTerm> sines;
    std::size_t i = 0;
    while (i < a_side.size()) {
        double repr = std::abs(a_side[i].action);
        double weight = 0.0;
        double residual = 0.0; // cosine part; cancels exactly by mirror symmetry
        std::size_t j = i;
        for (; j < a_side.size() && repr - std::abs(a_side[j].action) <= merge_tol; ++j) {
            weight += std::copysign(1.0, a_side[j].action) * a_side[j].amplitude;
            residual += a_side[j].amplitude;
        }
        if (std::abs(residual) > 1e-9 * secular_leading_scale(chain))
            throw NumericalError("transfer-matrix expansion lost mirror symmetry");
        if (repr > merge_tol)
            sines.push_back({weight, repr});
        i = j;
    }

    if (sines.empty() || std::abs(sines.front().action - s_total) > merge_tol ||
        sines.front().weight <= 0.0)
        throw NumericalError("transfer-matrix expansion lost its leading term");

    TrigPolynomial poly;
    poly.total_action = s_total;
    poly.gamma0 = 0.5; // sin(S0 k) = cos(S0 k - pi/2)
    double lead = sines.front().weight;
    for (std::size_t m = 1; m < sines.size(); ++m) {
        double c = sines[m].weight / lead;
        // value = sin(S0 k) + sum c*sin(S k); as a subtracted cosine term this
        // is a = |c| with gamma = -1/2 for c > 0 and +1/2 for c < 0.
        TrigTerm t;
        t.amplitude = std::abs(c);
        t.action = sines[m].action;
        t.gamma = c >= 0.0 ? -0.5 : 0.5;
        if (c == 0.0)
            t.gamma = -0.5; // lambda = 0 vertices keep their zero-amplitude term
        poly.terms.push_back(t);
    }
    return poly;
}

} // namespace qgraph
