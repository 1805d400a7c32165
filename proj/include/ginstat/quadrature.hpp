#ifndef GINSTAT_QUADRATURE_HPP
#define GINSTAT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace ginstat {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    std::size_t max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1,1] (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

template <class F>
Interval gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double ik = kGK15WeightsK[7] * fc;
    double ig = kGK15WeightsG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGK15Nodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        ik += kGK15WeightsK[i] * fsum;
        if (i % 2 == 1) ig += kGK15WeightsG[i / 2] * fsum;
    }
    ik *= h;
    ig *= h;
    return {a, b, ik, std::fabs(ik - ig)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration on the finite interval [a,b].
/// Worst-error-first bisection until the summed error estimate drops below
/// max(abs_tol, rel_tol*|I|) or the interval budget runs out.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureOptions& opts = {}) {
    QuadratureResult result;
    std::priority_queue<detail::Interval> queue;
    detail::Interval whole = detail::gk15(f, a, b);
    result.evaluations = 15;
    double total_value = whole.value;
    double total_error = whole.error;
    queue.push(whole);
    while (total_error > std::max(opts.abs_tol, opts.rel_tol * std::fabs(total_value)) &&
           queue.size() < opts.max_intervals && !queue.empty()) {
        detail::Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine precision; accept its estimate
            total_error = std::max(0.0, total_error - worst.error);
            continue;
        }
        detail::Interval left = detail::gk15(f, worst.a, mid);
        detail::Interval right = detail::gk15(f, mid, worst.b);
        result.evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    result.value = total_value;
    result.error = total_error;
    result.converged =
        total_error <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total_value));
    return result;
}

/// Integral over the whole real line via x = tan(t).
template <class F>
QuadratureResult integrate_real_line(F&& f, const QuadratureOptions& opts = {}) {
    auto g = [&f](double t) {
        const double c = std::cos(t);
        const double x = std::tan(t);
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (c * c);
    };
    return integrate(g, -M_PI_2, M_PI_2, opts);
}

/// Integral over (0, inf) via x = tan(t).
template <class F>
QuadratureResult integrate_positive_half_line(F&& f, const QuadratureOptions& opts = {}) {
    auto g = [&f](double t) {
        const double c = std::cos(t);
        const double x = std::tan(t);
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (c * c);
    };
    return integrate(g, 0.0, M_PI_2, opts);
}

}  // namespace ginstat

#endif
