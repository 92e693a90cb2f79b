#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgraph/numeric.hpp"
#include "qgraph/solver.hpp"

using namespace qgraph;

namespace {

StepGraph fig_graph() { return build_step_graph(0.3, 0.5); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("transparent step: every eigenvalue is exactly pi*n/S0") {
    StepGraph g = build_step_graph(0.4, 0.0);
    for (int q_max : {1, 5, 20}) {
        ExpansionConfig cfg;
        cfg.q_max = q_max;
        for (long n : {1L, 7L, 100L}) {
            double expected = kPi * static_cast<double>(n) / g.total_action;
            CHECK(explicit_eigenvalue(g, n, cfg) == expected); // bitwise
        }
    }
}

TEST_CASE("step graph: expansion converges into the allowed zone") {
    StepGraph g = fig_graph();
    ExpansionConfig cfg;
    cfg.q_max = 20;
    std::vector<EigenvalueRecord> recs =
        convergence_scan(g, {1, 10, 100}, {1, 10, 20}, cfg);
    REQUIRE(recs.size() == 9);

    TrigPolynomial trig = chain_to_trig_polynomial(g.to_chain());
    RegularityReport rep = regularity(trig);
    for (const EigenvalueRecord& r : recs) {
        CHECK(r.eps >= 0.0);
        CHECK(r.eps < 0.05);
        if (r.q >= 10) { // root-interval membership
            CHECK(r.k_explicit > separator(rep, trig.total_action, r.n - 1));
            CHECK(r.k_explicit < separator(rep, trig.total_action, r.n));
        }
    }
    // q = 20 beats q = 1 for every n
    for (int i = 0; i < 3; ++i)
        CHECK(recs[static_cast<std::size_t>(3 * i + 2)].eps <
              recs[static_cast<std::size_t>(3 * i)].eps);
}

TEST_CASE("every k_explicit with q_max >= 10 stays inside its root interval") {
    StepGraph g = fig_graph();
    TrigPolynomial trig = chain_to_trig_polynomial(g.to_chain());
    RegularityReport rep = regularity(trig);
    std::vector<long> ns;
    for (long n = 1; n <= 100; ++n)
        ns.push_back(n);
    ExpansionConfig cfg;
    cfg.q_max = 15;
    for (const EigenvalueRecord& r : convergence_scan(g, ns, {10, 15}, cfg)) {
        CHECK(r.k_explicit > separator(rep, trig.total_action, r.n - 1));
        CHECK(r.k_explicit < separator(rep, trig.total_action, r.n));
    }
}

TEST_CASE("windowed medians of eps decrease (q <= 20)") {
    ExpansionConfig cfg;
    cfg.q_max = 20;
    std::vector<int> qs;
    for (int q = 1; q <= 20; ++q)
        qs.push_back(q);
    std::vector<EigenvalueRecord> recs = convergence_scan(fig_graph(), {1, 10}, qs, cfg);
    for (long n : {1L, 10L}) {
        std::vector<double> early;
        std::vector<double> late;
        for (const EigenvalueRecord& r : recs) {
            if (r.n != n)
                continue;
            if (r.q >= 5 && r.q <= 10)
                early.push_back(r.eps);
            if (r.q >= 15 && r.q <= 20)
                late.push_back(r.eps);
        }
        CHECK(median(early) > median(late));
    }
}

TEST_CASE("grouped and enumerated paths agree to 1e-12") {
    StepGraph g = fig_graph();
    for (int q_max = 1; q_max <= 18; ++q_max) {
        ExpansionConfig enumerated;
        enumerated.q_max = q_max;
        ExpansionConfig grouped = enumerated;
        grouped.use_grouped = true;
        for (long n : {1L, 10L, 100L}) {
            double a = explicit_eigenvalue(g, n, enumerated);
            double b = explicit_eigenvalue(g, n, grouped);
            CHECK(std::abs(a - b) < 1e-12);
        }
    }
}

TEST_CASE("nu_max is saturated: doubling it moves nothing") {
    StepGraph g = fig_graph();
    ExpansionConfig a;
    a.q_max = 150;
    a.use_grouped = true;
    a.nu_max = 50;
    ExpansionConfig b = a;
    b.nu_max = 100;
    for (long n : {1L, 10L}) {
        double ka = explicit_eigenvalue(g, n, a);
        double kb = explicit_eigenvalue(g, n, b);
        CHECK(std::abs(ka - kb) < 1e-12);
    }
}

TEST_CASE("enumeration cap requires the grouped path") {
    ExpansionConfig cfg;
    cfg.q_max = 40;
    CHECK_THROWS_AS(explicit_eigenvalue(fig_graph(), 1, cfg), std::invalid_argument);
    cfg.use_grouped = true;
    CHECK_NOTHROW(explicit_eigenvalue(fig_graph(), 1, cfg));
}

TEST_CASE("q = 0 record is the mean-level value") {
    ExpansionConfig cfg;
    cfg.q_max = 5;
    StepGraph g = fig_graph();
    std::vector<EigenvalueRecord> recs = convergence_scan(g, {3}, {0, 5}, cfg);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].q == 0);
    CHECK(recs[0].k_explicit == kPi * 3.0 / g.total_action); // empty sum, bitwise
    CHECK(recs[0].eps ==
          std::abs(recs[0].k_explicit - recs[0].k_oracle) / recs[0].k_oracle);
}

TEST_CASE("determinism across runs and thread counts") {
    StepGraph g = fig_graph();
    ExpansionConfig cfg;
    cfg.q_max = 16;
    std::vector<int> qs;
    for (int q = 1; q <= 16; ++q)
        qs.push_back(q);
    std::vector<EigenvalueRecord> base = convergence_scan(g, {1, 10, 100}, qs, cfg, 1e-12, 1);
    for (int threads : {1, 2, 4}) {
        std::vector<EigenvalueRecord> again =
            convergence_scan(g, {1, 10, 100}, qs, cfg, 1e-12, threads);
        REQUIRE(again.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(again[i].k_explicit == base[i].k_explicit); // bitwise
            CHECK(again[i].k_oracle == base[i].k_oracle);
            CHECK(again[i].eps == base[i].eps);
        }
    }
}

TEST_CASE("power-law fit: synthetic self-test and error paths") {
    std::vector<EigenvalueRecord> recs;
    for (int q = 2; q <= 40; ++q) {
        EigenvalueRecord r;
        r.n = 1;
        r.q = q;
        r.eps = 0.37 * std::pow(static_cast<double>(q), -2.0);
        recs.push_back(r);
    }
    CHECK(power_law_fit(recs, 2, 40) == doctest::Approx(-2.0).epsilon(1e-9));

    std::vector<EigenvalueRecord> few(recs.begin(), recs.begin() + 5);
    CHECK_THROWS_AS(power_law_fit(few, 2, 40), std::invalid_argument);

    std::vector<EigenvalueRecord> zeros = recs;
    for (EigenvalueRecord& r : zeros)
        r.eps = 0.0;
    CHECK_THROWS_AS(power_law_fit(zeros, 2, 40), std::invalid_argument);

    // narrow q-span
    CHECK_THROWS_AS(power_law_fit(recs, 20, 40), std::invalid_argument);
}

TEST_CASE("scan input validation") {
    StepGraph g = fig_graph();
    ExpansionConfig cfg;
    CHECK_THROWS_AS(convergence_scan(g, {}, {1}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(convergence_scan(g, {1}, {}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(convergence_scan(g, {0}, {1}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(convergence_scan(g, {1}, {-1}, cfg), std::invalid_argument);
    cfg.q_max = 0;
    CHECK_THROWS_AS(explicit_eigenvalue(g, 1, cfg), std::invalid_argument);
}

TEST_SUITE_END();
