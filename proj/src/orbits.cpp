#include "qgraph/orbits.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgraph {

namespace {

// Shared by the enumerated and grouped paths so both produce bit-identical
// action/omega/amplitude values for the same (n1, n2, j) data.
void fill_kernel(const StepGraph& g, int q, int n1, int n2, int c22, int sigma, int tau_half,
                 double& action, double& omega, double& amplitude) {
    action = 2.0 * (n1 * g.action1 + n2 * g.action2);
    omega = action / g.total_action;
    double mag = std::pow(g.reflection, sigma) * std::pow(1.0 - g.reflection * g.reflection,
                                                          tau_half);
    amplitude = (q + c22) % 2 != 0 ? -mag : mag;
}

// Pascal triangle in doubles; exact until entries pass 2^53.
std::vector<std::vector<double>> binomial_rows(int n_max) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        rows[n].assign(static_cast<std::size_t>(n) + 1, 1.0);
        for (int k = 1; k < n; ++k)
            rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return rows;
}

} // namespace

void check_enumeration_length(int q) {
    if (q < 1)
        throw std::invalid_argument("orbit length must be >= 1");
    if (q > kEnumerationCap)
        throw std::invalid_argument("orbit length " + std::to_string(q) +
                                    " exceeds the enumeration cap " +
                                    std::to_string(kEnumerationCap) +
                                    "; use the grouped class path");
}

PrimeOrbit orbit_stats(std::string_view word, const StepGraph& graph) {
    if (word.empty())
        throw std::invalid_argument("orbit word is empty");
    PrimeOrbit p;
    p.word = std::string(word);
    p.q = static_cast<int>(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        char a = word[i];
        char b = word[(i + 1) % word.size()];
        if ((a != '1' && a != '2') || (b != '1' && b != '2'))
            throw std::invalid_argument("orbit word must use symbols '1' and '2'");
        if (a == '1')
            ++p.n1;
        if (a == '1' && b == '1')
            ++p.c11;
        else if (a == '2' && b == '2')
            ++p.c22;
        else if (a == '1')
            ++p.c12;
        else
            ++p.c21;
    }
    p.n2 = p.q - p.n1;
    p.sigma = p.c11 + p.c22;
    p.tau = p.c12 + p.c21;
    p.chi = (p.q + p.c22) % 2;
    fill_kernel(graph, p.q, p.n1, p.n2, p.c22, p.sigma, p.tau / 2, p.action, p.omega,
                p.amplitude);
    return p;
}

std::vector<OrbitClass> orbit_classes(int q, const StepGraph& graph) {
    if (q < 1)
        throw std::invalid_argument("orbit length must be >= 1");
    std::vector<OrbitClass> out;

    auto push = [&](int n1, int n2, int j, double multiplicity) {
        OrbitClass c;
        c.q = q;
        c.n1 = n1;
        c.n2 = n2;
        c.j = j;
        c.multiplicity = multiplicity;
        c.sigma = q - 2 * j;
        c.tau = 2 * j;
        c.chi = (q + (n2 - j)) % 2;
        fill_kernel(graph, q, n1, n2, n2 - j, c.sigma, j, c.action, c.omega, c.amplitude);
        out.push_back(c);
    };

    if (q == 1) {
        // the two single-bond bounces; no interior blocks
        push(1, 0, 0, 1.0);
        push(0, 1, 0, 1.0);
        return out;
    }

    auto binom = binomial_rows(q - 1);
    for (int n1 = q - 1; n1 >= 1; --n1) {
        int n2 = q - n1;
        for (int j = 1; j <= std::min(n1, n2); ++j) {
            // labeled cyclic sequences with these block counts number
            // (q/j) C(n1-1, j-1) C(n2-1, j-1); Moebius over the common divisor
            // removes the non-primitive ones, and each primitive necklace of
            // period q/d accounts for q/d labeled sequences.
            int g = std::gcd(std::gcd(n1, n2), j);
            double total = 0.0;
            for (int d = 1; d <= g; ++d) {
                if (g % d != 0)
                    continue;
                int mu = mobius(d);
                if (mu == 0)
                    continue;
                total += mu * binom[n1 / d - 1][j / d - 1] * binom[n2 / d - 1][j / d - 1];
            }
            double multiplicity = total / j;
            if (multiplicity != 0.0)
                push(n1, n2, j, multiplicity);
        }
    }
    return out;
}

int mobius(int n) {
    if (n < 1)
        throw std::invalid_argument("mobius: n must be positive");
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            result = -result;
        }
    }
    if (n > 1)
        result = -result;
    return result;
}

double lyndon_count(int q) {
    if (q < 1)
        throw std::invalid_argument("lyndon_count: q must be >= 1");
    double total = 0.0;
    for (int d = 1; d <= q; ++d) {
        if (q % d != 0)
            continue;
        int mu = mobius(d);
        if (mu != 0)
            total += mu * std::ldexp(1.0, q / d);
    }
    return total / q;
}

} // namespace qgraph
