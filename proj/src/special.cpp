#include "ginstat/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ginstat {

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(x));
#if defined(__GLIBC__) || defined(__APPLE__)
    // lgamma_r avoids the shared signgam global of lgamma(3).
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
    if (x < 0.0) {
        // erfcx(-x) = 2 exp(x^2) - erfcx(x); only small |x| occurs here.
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x <= 25.0) {
        // exp(x^2) stays below overflow and erfc(x) above underflow.
        return std::exp(x * x) * std::erfc(x);
    }
    // Asymptotic series erfcx(x) ~ 1/(x sqrt(pi)) sum (-1)^k (2k-1)!!/(2x^2)^k.
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(2 * k - 1) * inv2x2;
        sum += term;
    }
    return sum / (x * std::sqrt(M_PI));
}

CoshPartial cosh_truncated(double x, int n) {
    if (n < 1) throw std::domain_error("cosh_truncated: n must be >= 1");
    const double x2 = x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < n; ++k) {
        term *= x2 / ((2.0 * k - 1.0) * (2.0 * k));
        sum += term;
        if (std::isinf(sum)) return {std::numeric_limits<double>::infinity(), true};
        if (term < sum * 1e-18) break;  // converged to the full cosh
    }
    return {sum, false};
}

}  // namespace ginstat
