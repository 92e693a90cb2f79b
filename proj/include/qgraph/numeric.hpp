#pragma once

#include <cmath>

namespace qgraph {

inline constexpr double kPi = 3.14159265358979323846;

// Neumaier-compensated accumulator. The orbit sums add ~1e7 terms of mixed
// sign; naive accumulation loses digits that the determinism and
// grouped-vs-enumerated checks need.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// sin(pi*x), exact zero (and exact sign) at integer x. Reduces to a
// fractional part in [-1/2, 1/2] before touching libm.
inline double sinpi(double x) {
    double n = std::nearbyint(x);
    double f = x - n;
    double s = std::sin(kPi * f);
    return std::fmod(n, 2.0) != 0.0 ? -s : s;
}

// sin(pi * a*b) with the product formed and reduced modulo 2 in extended
// precision; a*b can reach ~1e6 where a double product alone drops digits.
inline double sinpi_prod(double a, double b) {
    long double x = static_cast<long double>(a) * static_cast<long double>(b);
    return sinpi(static_cast<double>(fmodl(x, 2.0L)));
}

inline double sinpi_prod(double a, double b, double c) {
    long double x = static_cast<long double>(a) * static_cast<long double>(b) *
                    static_cast<long double>(c);
    return sinpi(static_cast<double>(fmodl(x, 2.0L)));
}

// cos(S*k - pi*gamma) with S*k reduced modulo 2*pi in extended precision.
// gamma is the phase in units of pi.
inline double cos_phase(double action, double k, double gamma_pi) {
    const long double kTwoPiL = 6.283185307179586476925286766559L;
    long double x = static_cast<long double>(action) * static_cast<long double>(k);
    double reduced = static_cast<double>(fmodl(x, kTwoPiL));
    return std::cos(reduced - kPi * gamma_pi);
}

} // namespace qgraph
