#include "volcast/stats.hpp"

#include <cmath>
#include <limits>

#include "volcast/errors.hpp"

namespace volcast::stats {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for I_x(a,b), modified Lentz algorithm.
double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-15;
    constexpr int max_terms = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_terms; ++m) {
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
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw Error::numeric("BetaCfDiverged", "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0)) {
        throw Error::numeric("InvalidBetaArgs", "regularized_incomplete_beta: need a,b > 0 and x in [0,1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    // The continued fraction converges fastest below the distribution mean.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(b, a)) *
                     beta_continued_fraction(1.0 - x, b, a) / b;
}

double f_upper_tail(double x, int d1, int d2) {
    if (d1 < 1 || d2 < 1) {
        throw Error::numeric("InvalidDegrees", "f_upper_tail: degrees of freedom must be positive");
    }
    if (!(x >= 0.0)) {
        throw Error::numeric("InvalidFValue", "f_upper_tail: x must be nonnegative");
    }
    if (std::isinf(x)) return 0.0;
    if (x == 0.0) return 1.0;
    // P(F > x) = I_{d2/(d2 + d1 x)}(d2/2, d1/2); this form evaluates the tail
    // directly instead of subtracting from one.
    const double dd1 = static_cast<double>(d1);
    const double dd2 = static_cast<double>(d2);
    return regularized_incomplete_beta(dd2 / (dd2 + dd1 * x), dd2 / 2.0, dd1 / 2.0);
}

}  // namespace volcast::stats
