#include "qgraph/spectral.hpp"

#include <cmath>
#include <string>

#include "qgraph/errors.hpp"
#include "qgraph/numeric.hpp"

namespace qgraph {

namespace {

constexpr int kMaxBisection = 100;

void require_regular(const RegularityReport& report, const char* who) {
    if (!report.regular)
        throw NonRegularError(std::string(who) + ": system is not regular (alpha = " +
                              std::to_string(report.alpha) + " >= 1)");
}

double bisect(const TrigPolynomial& trig, double lo, double hi, double f_lo, double tol) {
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxBisection && hi - lo > tol * std::abs(mid); ++it) {
        double f_mid = trig.evaluate(mid);
        if (f_mid == 0.0)
            return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }
    return mid;
}

} // namespace

RegularityReport regularity(const TrigPolynomial& trig) {
    RegularityReport report;
    for (const TrigTerm& t : trig.terms)
        report.alpha += std::abs(t.amplitude);
    report.regular = report.alpha < 1.0;
    if (!report.regular)
        return report;

    double s0 = trig.total_action;
    report.zone_halfwidth = std::acos(report.alpha) / s0;

    // Resolve mu: find the first positive root by scanning upward. Roots are
    // at least 2u apart, so steps of u/2 cannot jump over a sign change.
    double step = 0.5 * report.zone_halfwidth;
    double k_prev = 1e-2 * step; // k = 0 itself can be a (non-counted) root
    double f_prev = trig.evaluate(k_prev);
    double first_root = -1.0;
    double k_cap = 64.0 * kPi / s0;
    for (double k = k_prev + step; k <= k_cap; k += step) {
        double f = trig.evaluate(k);
        if (f == 0.0 || (f < 0.0) != (f_prev < 0.0)) {
            first_root = bisect(trig, k_prev, k, f_prev, 1e-13);
            break;
        }
        k_prev = k;
        f_prev = f;
    }
    if (first_root < 0.0)
        throw NumericalError("regularity: no root found while resolving mu");
    report.mu = static_cast<long>(std::floor(first_root * s0 / kPi - trig.gamma0));
    report.gamma = trig.gamma0 + static_cast<double>(report.mu);
    return report;
}

double separator(const RegularityReport& report, double total_action, long n) {
    require_regular(report, "separator");
    return kPi * (static_cast<double>(n) + report.gamma) / total_action;
}

RootZone root_zone(const RegularityReport& report, double total_action, long n) {
    require_regular(report, "root_zone");
    RootZone z;
    z.sep_lo = separator(report, total_action, n - 1);
    z.sep_hi = separator(report, total_action, n);
    z.zone_lo = z.sep_lo + report.zone_halfwidth;
    z.zone_hi = z.sep_hi - report.zone_halfwidth;
    return z;
}

double find_root_in_zone(const TrigPolynomial& trig, const RegularityReport& report,
                         long n, double tol) {
    require_regular(report, "find_root_in_zone");
    if (n < 1)
        throw std::invalid_argument("find_root_in_zone: n must be >= 1");
    RootZone z = root_zone(report, trig.total_action, n);

    // At a separator the leading cosine is +-1 and |Phi| <= alpha < 1, so the
    // signs at sep_lo/sep_hi are opposite by construction. Bracketing there
    // instead of at the zone edges keeps the alpha -> 0 limit (zone width 0)
    // out of trouble.
    double f_lo = trig.evaluate(z.sep_lo);
    double f_hi = trig.evaluate(z.sep_hi);
    if (f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) == (f_hi < 0.0))
        throw NumericalError("find_root_in_zone: no sign change across interval " +
                             std::to_string(n) + "; regularity assumption violated");
    double root = bisect(trig, z.sep_lo, z.sep_hi, f_lo, tol);

    double slack = 1e-9 * (z.sep_hi - z.sep_lo) + 2.0 * tol * std::abs(root);
    if (root < z.zone_lo - slack || root > z.zone_hi + slack)
        throw NumericalError("find_root_in_zone: root " + std::to_string(root) +
                             " escaped its allowed zone (n = " + std::to_string(n) + ")");
    return root;
}

long staircase_count(const TrigPolynomial& trig, const RegularityReport& report, double k) {
    require_regular(report, "staircase_count");
    if (k < separator(report, trig.total_action, 0))
        return 0;
    long idx = static_cast<long>(std::floor(k * trig.total_action / kPi - report.gamma)) + 1;
    if (idx < 1)
        idx = 1;
    double root = find_root_in_zone(trig, report, idx);
    return root <= k ? idx : idx - 1;
}

std::vector<double> dense_scan_roots(const TrigPolynomial& trig, double k_min, double k_max,
                                     double spacing, double tol) {
    std::vector<double> roots;
    if (!(spacing > 0.0) || k_max <= k_min)
        throw std::invalid_argument("dense_scan_roots: bad window or spacing");
    double k_prev = k_min;
    double f_prev = trig.evaluate(k_prev);
    for (double k = k_min + spacing; k_prev < k_max; k += spacing) {
        if (k > k_max)
            k = k_max;
        double f = trig.evaluate(k);
        if (f == 0.0)
            roots.push_back(k);
        else if ((f < 0.0) != (f_prev < 0.0))
            roots.push_back(bisect(trig, k_prev, k, f_prev, tol));
        if (k >= k_max)
            break;
        k_prev = k;
        f_prev = f;
    }
    return roots;
}

} // namespace qgraph
