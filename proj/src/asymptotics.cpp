#include "ginstat/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ginstat/special.hpp"

namespace ginstat {

double mean_nr_asymptotic(int N) {
    if (N < 2 || N % 2 != 0)
        throw std::domain_error("mean_nr_asymptotic: N must be even and positive");
    return std::sqrt(2.0 * N / M_PI);
}

double sigma2_limit(const EvenPolynomial& P) {
    // int_{-1}^{1} x^{p+q} dx = 2/(p+q+1) for even p+q
    double integral = 0.0;
    for (const auto& [p, cp] : P.coefficients())
        for (const auto& [q, cq] : P.coefficients())
            integral += cp * cq * 2.0 / (p + q + 1);
    return 0.5 * (2.0 - std::sqrt(2.0)) * integral;
}

double s_pq_sum(int p, int q, int n) {
    if (p < 0 || q < 0 || p % 2 != 0 || q % 2 != 0)
        throw std::domain_error("s_pq_sum: p, q must be even and >= 0");
    if (n < 1) throw std::domain_error("s_pq_sum: n must be >= 1");
    // precompute lgamma on the two half-integer ladders and the denominators
    std::vector<double> num_p(static_cast<std::size_t>(2 * n) + 1),
        num_q(static_cast<std::size_t>(2 * n) + 1), den(static_cast<std::size_t>(n) + 1);
    for (int t = 2; t <= 2 * n; ++t) {
        num_p[static_cast<std::size_t>(t)] = log_gamma(t + p / 2 - 1.5);
        num_q[static_cast<std::size_t>(t)] = log_gamma(t + q / 2 - 1.5);
    }
    for (int k = 1; k <= n; ++k)
        den[static_cast<std::size_t>(k)] = log_gamma(2.0 * k - 1.0);
    const double norm = 0.5 * (p + q + 1) * std::log(static_cast<double>(n));
    double sum = 0.0;
    for (int k1 = 1; k1 <= n; ++k1) {
        const double d1 = den[static_cast<std::size_t>(k1)];
        for (int k2 = 1; k2 <= n; ++k2) {
            const int t = k1 + k2;
            sum += std::exp(num_p[static_cast<std::size_t>(t)] +
                            num_q[static_cast<std::size_t>(t)] - d1 -
                            den[static_cast<std::size_t>(k2)] - norm);
        }
    }
    return sum;
}

double s_pq_limit(int p, int q) {
    if (p < 0 || q < 0 || p % 2 != 0 || q % 2 != 0)
        throw std::domain_error("s_pq_limit: p, q must be even and >= 0");
    return std::sqrt(M_PI) * std::pow(2.0, 0.5 * (p + q + 1)) / (p + q + 1);
}

double scaling_exponent(const std::vector<LimitPoint>& points) {
    if (points.size() < 3)
        throw std::domain_error("scaling_exponent: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& pt : points) {
        if (pt.n <= 0 || pt.value == 0.0)
            throw std::domain_error(
                "scaling_exponent: points need positive n and nonzero values");
        const double x = std::log(static_cast<double>(pt.n));
        const double y = std::log(std::fabs(pt.value));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(points.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace ginstat
