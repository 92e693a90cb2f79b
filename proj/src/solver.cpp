#include "qgraph/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "qgraph/errors.hpp"
#include "qgraph/numeric.hpp"
#include "qgraph/orbits.hpp"

namespace qgraph {

namespace {

// Everything the per-orbit loop needs besides the orbit itself.
struct ExpansionPlan {
    const StepGraph* graph = nullptr;
    const std::vector<long>* n_list = nullptr;
    int q_max = 0;
    int nu_max = 0;
    double nu_tail_tol = 0.0;
};

// Repetition terms of one orbit (or one class, weight = multiplicity),
// scattered into the buckets nu*len. acc is indexed [nu-1][n_index].
void accumulate_orbit(const ExpansionPlan& plan, int len, double action, double omega,
                      double amplitude, double weight, std::vector<CompensatedSum>& acc) {
    const std::vector<long>& ns = *plan.n_list;
    int nu_cap = std::min(plan.nu_max, plan.q_max / len);
    double apow = 1.0;
    for (int nu = 1; nu <= nu_cap; ++nu) {
        apow *= amplitude;
        if (apow == 0.0)
            break;
        double bound = weight * std::abs(apow) / (static_cast<double>(nu) * nu);
        if (plan.nu_tail_tol > 0.0 && bound < plan.nu_tail_tol)
            break;
        double common = weight * (apow / (static_cast<double>(nu) * nu)) *
                        sinpi_prod(0.5 * nu, omega) / action;
        std::size_t base = static_cast<std::size_t>(nu - 1) * ns.size();
        for (std::size_t i = 0; i < ns.size(); ++i)
            acc[base + i].add(common * sinpi_prod(nu, omega, static_cast<double>(ns[i])));
    }
}

// All prime orbits of one length, in canonical order (lexicographic words /
// the fixed class order). Returns the per-(nu, n) compensated partials.
std::vector<CompensatedSum> length_contribution(const ExpansionPlan& plan, int len,
                                                bool grouped) {
    std::size_t slots = static_cast<std::size_t>(
                            std::min(plan.nu_max, plan.q_max / len)) *
                        plan.n_list->size();
    std::vector<CompensatedSum> acc(slots);
    if (grouped) {
        for (const OrbitClass& c : orbit_classes(len, *plan.graph))
            accumulate_orbit(plan, len, c.action, c.omega, c.amplitude, c.multiplicity, acc);
    } else {
        const StepGraph& g = *plan.graph;
        for_each_lyndon_word(len, [&](std::string_view word) {
            PrimeOrbit p = orbit_stats(word, g);
            accumulate_orbit(plan, len, p.action, p.omega, p.amplitude, 1.0, acc);
        });
    }
    return acc;
}

void validate_config(const ExpansionConfig& cfg, int max_q) {
    if (cfg.nu_max < 1)
        throw std::invalid_argument("nu_max must be >= 1");
    if (cfg.nu_tail_tol < 0.0)
        throw std::invalid_argument("nu_tail_tol must be >= 0");
    if (!cfg.use_grouped && max_q > kEnumerationCap)
        throw std::invalid_argument(
            "q_max " + std::to_string(max_q) + " exceeds the enumeration cap " +
            std::to_string(kEnumerationCap) + "; set use_grouped");
}

} // namespace

std::vector<EigenvalueRecord> convergence_scan(const StepGraph& graph,
                                               const std::vector<long>& n_list,
                                               const std::vector<int>& q_list,
                                               const ExpansionConfig& cfg, double oracle_tol,
                                               int threads) {
    if (n_list.empty() || q_list.empty())
        throw std::invalid_argument("convergence_scan: empty n_list or q_list");
    for (long n : n_list)
        if (n < 1)
            throw std::invalid_argument("convergence_scan: n must be >= 1");
    for (int q : q_list)
        if (q < 0)
            throw std::invalid_argument("convergence_scan: q must be >= 0");
    if (threads < 1)
        throw std::invalid_argument("convergence_scan: threads must be >= 1");

    std::vector<int> cuts(q_list);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const int q_top = cuts.back();
    validate_config(cfg, q_top);

    TrigPolynomial trig = chain_to_trig_polynomial(graph.to_chain());
    RegularityReport report = regularity(trig);
    if (!report.regular)
        throw NonRegularError("convergence_scan: expansion requires a regular system");
    if (report.gamma != 0.5)
        throw NumericalError("convergence_scan: Dirichlet chain should have gamma = 1/2, got " +
                             std::to_string(report.gamma));

    std::vector<double> oracle(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i)
        oracle[i] = find_root_in_zone(trig, report, n_list[i], oracle_tol);

    ExpansionPlan plan{&graph, &n_list, q_top, cfg.nu_max, cfg.nu_tail_tol};

    // Lengths are independent; compute (possibly in parallel), merge in the
    // fixed ascending order afterwards so the result ignores scheduling.
    std::vector<std::vector<CompensatedSum>> per_length(static_cast<std::size_t>(q_top) + 1);
    if (q_top >= 1) {
        if (threads == 1) {
            for (int len = 1; len <= q_top; ++len)
                per_length[len] = length_contribution(plan, len, cfg.use_grouped);
        } else {
            std::atomic<int> next{q_top}; // long lengths first; they dominate
            auto worker = [&]() {
                for (int len = next.fetch_sub(1); len >= 1; len = next.fetch_sub(1))
                    per_length[len] = length_contribution(plan, len, cfg.use_grouped);
            };
            std::vector<std::thread> pool;
            int nthreads = std::min(threads, q_top);
            pool.reserve(static_cast<std::size_t>(nthreads));
            for (int t = 0; t < nthreads; ++t)
                pool.emplace_back(worker);
            for (std::thread& t : pool)
                t.join();
        }
    }

    // bucket b collects (len, nu = b/len) for every len dividing b
    std::vector<std::vector<double>> bucket(static_cast<std::size_t>(q_top) + 1,
                                            std::vector<double>(n_list.size(), 0.0));
    for (int b = 1; b <= q_top; ++b) {
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            CompensatedSum s;
            for (int len = 1; len <= b; ++len) {
                if (b % len != 0)
                    continue;
                int nu = b / len;
                if (nu > std::min(cfg.nu_max, q_top / len))
                    continue;
                s.add(per_length[len][static_cast<std::size_t>(nu - 1) * n_list.size() + i]
                          .value());
            }
            bucket[b][i] = s.value();
        }
    }

    std::vector<EigenvalueRecord> records;
    records.reserve(n_list.size() * cuts.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        double base = kPi * static_cast<double>(n_list[i]) / graph.total_action;
        CompensatedSum correction;
        std::size_t cut_pos = 0;
        for (int b = 0; b <= q_top && cut_pos < cuts.size(); ++b) {
            if (b > 0)
                correction.add(bucket[b][i]);
            if (b == cuts[cut_pos]) {
                EigenvalueRecord rec;
                rec.n = n_list[i];
                rec.q = b;
                rec.k_explicit = base - (2.0 / kPi) * correction.value();
                rec.k_oracle = oracle[i];
                rec.eps = std::abs(rec.k_explicit - rec.k_oracle) / rec.k_oracle;
                records.push_back(rec);
                ++cut_pos;
            }
        }
    }
    return records;
}

double explicit_eigenvalue(const StepGraph& graph, long n, const ExpansionConfig& cfg,
                           int threads) {
    if (cfg.q_max < 1)
        throw std::invalid_argument("explicit_eigenvalue: q_max must be >= 1");
    return convergence_scan(graph, {n}, {cfg.q_max}, cfg, 1e-12, threads)
        .front()
        .k_explicit;
}

double power_law_fit(const std::vector<EigenvalueRecord>& records, int q_lo, int q_hi) {
    if (q_hi < 0)
        for (const EigenvalueRecord& r : records)
            q_hi = std::max(q_hi, r.q);
    std::vector<double> xs;
    std::vector<double> ys;
    int q_min_used = 0;
    int q_max_used = 0;
    for (const EigenvalueRecord& r : records) {
        if (r.q < q_lo || r.q > q_hi || !(r.eps > 0.0) || r.q < 1)
            continue;
        xs.push_back(std::log(static_cast<double>(r.q)));
        ys.push_back(std::log(r.eps));
        q_min_used = q_min_used == 0 ? r.q : std::min(q_min_used, r.q);
        q_max_used = std::max(q_max_used, r.q);
    }
    if (xs.size() < 10 || q_max_used < 4 * q_min_used)
        throw std::invalid_argument(
            "power_law_fit: need >= 10 positive-eps records spanning a 4x range in q");
    double x_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= static_cast<double>(xs.size());
    y_mean /= static_cast<double>(xs.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - x_mean) * (ys[i] - y_mean);
        den += (xs[i] - x_mean) * (xs[i] - x_mean);
    }
    return num / den;
}

} // namespace qgraph
