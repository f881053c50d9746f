#include "advisory/special_functions.hpp"
#include "advisory/errors.hpp"

#include <cmath>
#include <limits>

namespace advisory::sf {

namespace {

// Lanczos coefficients, g = 7, n = 9
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Continued fraction for I_x(a,b), modified Lentz algorithm.
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

// Bisection to interval width 1e-10 on a monotone cdf; bracket grown
// geometrically from [0, hi0].
template <typename Cdf>
double invert_monotone(const Cdf& cdf, double p, double hi0) {
    double lo = 0.0;
    double hi = hi0;
    int grow = 0;
    while (cdf(hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 400) throw DomainError("inverse bracket did not close");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma requires x > 0");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - ln_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
                          + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, double df) {
    if (!(df > 0.0)) throw DomainError("t_cdf requires df > 0");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - half_tail : half_tail;
}

double t_inv(double p, double df) {
    if (!(df > 0.0)) throw DomainError("t_inv requires df > 0");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("t_inv requires p in (0, 1)");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -t_inv(1.0 - p, df);
    return invert_monotone([df](double t) { return t_cdf(t, df); }, p, 1.0);
}

double f_cdf(double f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("f_cdf requires d1, d2 > 0");
    if (f < 0.0) throw DomainError("f_cdf requires f >= 0");
    if (f == 0.0) return 0.0;
    const double x = d1 * f / (d1 * f + d2);
    return reg_inc_beta(0.5 * d1, 0.5 * d2, x);
}

double f_inv(double p, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("f_inv requires d1, d2 > 0");
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("f_inv requires p in [0, 1)");
    if (p == 0.0) return 0.0;
    return invert_monotone([d1, d2](double f) { return f_cdf(f, d1, d2); }, p, 1.0);
}

} // namespace advisory::sf
