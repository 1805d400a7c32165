#ifndef GINSTAT_ASYMPTOTICS_HPP
#define GINSTAT_ASYMPTOTICS_HPP

#include <string>
#include <vector>

#include "ginstat/even_poly.hpp"

namespace ginstat {

/// One finite-n data point of a convergence study.
struct LimitPoint {
    int n = 0;
    double value = 0.0;
};

/// A named finite-n sequence together with its predicted limit and a
/// convergence metric (fitted log-log slope or terminal relative gap).
struct LimitCheck {
    std::string quantity;
    std::vector<LimitPoint> finite_n;
    double predicted_limit = 0.0;
    double metric = 0.0;
    std::string metric_kind;  // "fitted_slope" | "terminal_gap"
};

/// Leading-order mean count of real eigenvalues, sqrt(2N/pi), N even.
double mean_nr_asymptotic(int N);

/// Limit variance of the normalized linear statistic:
/// (2 - sqrt(2))/2 * int_{-1}^{1} P(x)^2 dx, exactly from the coefficients.
double sigma2_limit(const EvenPolynomial& P);

/// Normalized double sum of Gamma ratios whose limit governs the covariance:
///   n^{-(p+q+1)/2} sum_{k1,k2<=n} G(k1+k2+q/2-3/2) G(k1+k2+p/2-3/2)
///                                 / (G(2k1-1) G(2k2-1)).
double s_pq_sum(int p, int q, int n);

/// Closed-form limit of s_pq_sum: sqrt(pi) 2^{(p+q+1)/2} / (p+q+1).
double s_pq_limit(int p, int q);

/// Least-squares slope of log|value| against log n. Requires >= 3 points,
/// positive n and nonzero values.
double scaling_exponent(const std::vector<LimitPoint>& points);

}  // namespace ginstat

#endif
