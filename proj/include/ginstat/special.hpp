#ifndef GINSTAT_SPECIAL_HPP
#define GINSTAT_SPECIAL_HPP

namespace ginstat {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Complementary error function.
double erfc(double x);

/// Scaled complementary error function exp(x^2) erfc(x), stable for large x.
double erfcx(double x);

struct CoshPartial {
    double value = 0.0;
    bool saturated = false;  // partial sum overflowed to +inf
};

/// Truncated hyperbolic cosine: sum_{k=0}^{n-1} x^{2k}/(2k)!.
/// Monotone nondecreasing in n and bounded by cosh(x). Overflow saturates
/// to +inf with the flag set instead of erroring.
CoshPartial cosh_truncated(double x, int n);

}  // namespace ginstat

#endif
