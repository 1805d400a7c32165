#include "ginstat/skew_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ginstat/errors.hpp"
#include "ginstat/special.hpp"

namespace ginstat {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

// Squared-radius cutoff beyond which the Gaussian weights underflow to zero;
// keeps poly * exp products away from inf * 0.
constexpr double kRadius2Cutoff = 4000.0;

double pow_int(double x, int p) {
    double r = 1.0;
    double base = x;
    for (int e = p; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

std::complex<double> pow_int(std::complex<double> x, int p) {
    std::complex<double> r = 1.0;
    std::complex<double> base = x;
    for (int e = p; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

void validate_entry_args(int r, int s, int k1, int k2) {
    if (r < 0 || s < 0 || r % 2 != 0 || s % 2 != 0)
        throw std::domain_error("f_entry: monomial powers must be even and >= 0, got (" +
                                std::to_string(r) + "," + std::to_string(s) + ")");
    if (k1 < 1 || k2 < 1)
        throw std::domain_error("f_entry: indices k1, k2 must be >= 1");
}

}  // namespace

double skew_poly_eval(int j, double x) {
    if (j < 0) throw std::domain_error("skew_poly_eval: negative index");
    if (j % 2 == 0) return pow_int(x, j);
    const int m = (j - 1) / 2;
    if (m == 0) return x;
    return pow_int(x, j) - 2.0 * m * pow_int(x, j - 2);
}

std::complex<double> skew_poly_eval(int j, std::complex<double> z) {
    if (j < 0) throw std::domain_error("skew_poly_eval: negative index");
    if (j % 2 == 0) return pow_int(z, j);
    const int m = (j - 1) / 2;
    if (m == 0) return z;
    return pow_int(z, j) - 2.0 * m * pow_int(z, j - 2);
}

namespace detail {

GammaTables::GammaTables(int cap) : cap_(cap) {
    lg_int_.resize(static_cast<std::size_t>(cap) + 1, 0.0);
    lg_half_.resize(static_cast<std::size_t>(cap) + 1, 0.0);
    for (int k = 1; k <= cap; ++k) {
        lg_int_[static_cast<std::size_t>(k)] = log_gamma(static_cast<double>(k));
        lg_half_[static_cast<std::size_t>(k)] = log_gamma(k - 0.5);
    }
}

double ETermStream::next() {
    // term i of the inner sum: Gamma(i+j-1/2) / (2^i i!)
    const int i = k_;  // adding term i when moving from k to k+1
    acc_.add_log_term(tables_->lgamma_half(i + j_) - i * kLn2 - tables_->lgamma_int(i + 1));
    ++k_;
    // E(j,k) = (k-1)! 2^{k-1} * sum
    return tables_->lgamma_int(k_) + (k_ - 1) * kLn2 + acc_.log_sum();
}

double f_entry_log(const GammaTables& tables, int r, int s, int k1, int k2,
                   bool include_error_term) {
    const double lead = tables.lgamma_half(k1 + k2 + (r + s) / 2 - 1);
    if (s == 0 || !include_error_term) return lead;
    const int j = k1 + r / 2;
    const int k = k2 + s / 2 - 1;
    ETermStream stream(tables, j);
    double log_e = 0.0;
    for (int kk = 1; kk <= k; ++kk) log_e = stream.next();
    const LogScaledReal sum = LogScaledReal::from_log(1, lead) +
                              LogScaledReal::from_log(1, std::log(double(s)) + log_e);
    return sum.log_magnitude;
}

}  // namespace detail

LogScaledReal e_term_log(int j, int k) {
    if (k < 1) throw std::domain_error("e_term: k must be >= 1");
    if (j < 1) throw std::domain_error("e_term: j must be >= 1");
    detail::GammaTables tables(j + k + 2);
    detail::ETermStream stream(tables, j);
    double log_e = 0.0;
    for (int kk = 1; kk <= k; ++kk) log_e = stream.next();
    return LogScaledReal::from_log(1, log_e);
}

double e_term(int j, int k) { return e_term_log(j, k).value(); }

SkewEntry f_entry(int r, int s, int k1, int k2, bool include_error_term) {
    validate_entry_args(r, s, k1, k2);
    detail::GammaTables tables(k1 + k2 + (r + s) / 2 + 2);
    SkewEntry entry;
    entry.r = r;
    entry.s = s;
    entry.a = 2 * k1 - 2;
    entry.b = 2 * k2 - 1;
    entry.value = LogScaledReal::from_log(
        1, detail::f_entry_log(tables, r, s, k1, k2, include_error_term));
    return entry;
}

namespace {

struct Nested2DResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

// Outer integral over (0, inf), inner over the real line. The inner integrals
// use a tolerance a notch below the outer one; their worst error estimate is
// folded into the reported error.
template <class F2>
Nested2DResult nested_half_by_line(F2&& f, const InnerProductOptions& opts) {
    Nested2DResult out;
    QuadratureOptions inner_opts{opts.abs_tol * 0.1, opts.rel_tol * 0.1,
                                 opts.max_intervals};
    QuadratureOptions outer_opts{opts.abs_tol, opts.rel_tol, opts.max_intervals};
    double worst_inner_error = 0.0;
    std::size_t inner_evals = 0;
    bool inner_ok = true;
    auto outer_integrand = [&](double u) {
        QuadratureResult inner =
            integrate_real_line([&](double v) { return f(u, v); }, inner_opts);
        inner_evals += inner.evaluations;
        if (!inner.converged) inner_ok = false;
        worst_inner_error = std::max(worst_inner_error, inner.error);
        return inner.value;
    };
    QuadratureResult outer = integrate_positive_half_line(outer_integrand, outer_opts);
    out.value = outer.value;
    // inner errors enter weighted by the outer measure; M_PI_2 is the
    // transformed outer interval length
    out.error = outer.error + M_PI_2 * worst_inner_error;
    out.evaluations = inner_evals;
    out.converged = outer.converged && inner_ok;
    return out;
}

}  // namespace

QuadratureResult a_inner_quadrature_full(const std::function<double(double, double)>& h,
                                         int a, int b, const InnerProductOptions& opts) {
    if (a < 0 || b < 0)
        throw std::domain_error("a_inner_quadrature: polynomial indices must be >= 0");
    const double inv_sqrt2 = M_SQRT1_2;
    // rotated frame: u = (y-x)/sqrt2 > 0 on the y > x half, v = (x+y)/sqrt2
    auto integrand = [&](double u, double v) {
        const double r2 = u * u + v * v;
        if (r2 > kRadius2Cutoff) return 0.0;
        const double w = std::exp(-0.5 * r2);
        const double xp = (v - u) * inv_sqrt2, yp = (v + u) * inv_sqrt2;
        const double plus = h(xp, yp) * skew_poly_eval(a, xp) * skew_poly_eval(b, yp);
        // mirror image across y = x carries the opposite kernel sign
        const double minus = h(yp, xp) * skew_poly_eval(a, yp) * skew_poly_eval(b, xp);
        return 0.5 * w * (plus - minus);
    };
    Nested2DResult r = nested_half_by_line(integrand, opts);
    QuadratureResult q{r.value, r.error, r.evaluations, r.converged};
    return q;
}

double a_inner_quadrature(const std::function<double(double, double)>& h, int a, int b,
                          const InnerProductOptions& opts) {
    QuadratureResult r = a_inner_quadrature_full(h, a, b, opts);
    if (!r.converged)
        throw QuadratureError("a_inner_quadrature: error estimate " +
                                  std::to_string(r.error) + " above tolerance",
                              r.value, r.error);
    return r.value;
}

QuadratureResult b_inner_quadrature_full(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& g,
    int a, int b, const InnerProductOptions& opts) {
    if (a < 0 || b < 0)
        throw std::domain_error("b_inner_quadrature: polynomial indices must be >= 0");
    // Upper half-plane reduction:
    //   B = -2 int_{y>0} g(z, zbar) Im[P_a(z) P_b(zbar)] e^{-x^2-y^2}
    //       erfcx(sqrt(2) y) dx dy
    auto integrand = [&](double y, double x) {
        const double r2 = x * x + y * y;
        if (r2 > kRadius2Cutoff) return 0.0;
        const std::complex<double> z(x, y);
        const std::complex<double> zbar = std::conj(z);
        const std::complex<double> pp = skew_poly_eval(a, z) * skew_poly_eval(b, zbar);
        const double gv = std::real(g(z, zbar));
        return -2.0 * gv * std::imag(pp) * std::exp(-r2) * erfcx(M_SQRT2 * y);
    };
    Nested2DResult r = nested_half_by_line(integrand, opts);
    QuadratureResult q{r.value, r.error, r.evaluations, r.converged};
    return q;
}

double b_inner_quadrature(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& g,
    int a, int b, const InnerProductOptions& opts) {
    QuadratureResult r = b_inner_quadrature_full(g, a, b, opts);
    if (!r.converged)
        throw QuadratureError("b_inner_quadrature: error estimate " +
                                  std::to_string(r.error) + " above tolerance",
                              r.value, r.error);
    return r.value;
}

}  // namespace ginstat
