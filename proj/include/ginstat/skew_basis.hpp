#ifndef GINSTAT_SKEW_BASIS_HPP
#define GINSTAT_SKEW_BASIS_HPP

#include <complex>
#include <functional>
#include <vector>

#include "ginstat/log_scaled.hpp"
#include "ginstat/quadrature.hpp"

namespace ginstat {

/// Monic skew-orthogonal polynomial for the real Ginibre weight:
/// P_{2m}(x) = x^{2m},  P_{2m+1}(x) = x^{2m+1} - 2m x^{2m-1}.
double skew_poly_eval(int j, double x);
std::complex<double> skew_poly_eval(int j, std::complex<double> z);

/// E(j,k) = (k-1)! 2^{k-1} sum_{i=0}^{k-1} Gamma(i+j-1/2) / (2^i i!),
/// the error-term factor of the closed-form skew inner product entries.
LogScaledReal e_term_log(int j, int k);
double e_term(int j, int k);

/// Closed-form skew inner product entry with monomial weights x^r y^s between
/// the even-index polynomial P_{2k1-2}(x) and the odd-index P_{2k2-1}(y):
///   value = Gamma(k1+k2+(r+s)/2-3/2) + s E(k1+r/2, k2+s/2-1).
struct SkewEntry {
    int r = 0, s = 0;  // monomial powers (even)
    int a = 0, b = 0;  // polynomial indices paired with x and y
    LogScaledReal value;
};

SkewEntry f_entry(int r, int s, int k1, int k2, bool include_error_term = true);

struct InnerProductOptions {
    double abs_tol = 1e-9;
    double rel_tol = 5e-10;
    std::size_t max_intervals = 4000;
};

/// Quadrature oracle for the real skew inner product
///   A[h]_{a,b} = 1/2 iint h(x,y) e^{-x^2/2-y^2/2} P_a(x) P_b(y) sign(y-x) dx dy.
/// The plane is split along y = x (rotated coordinates remove the kernel
/// discontinuity) and each half is integrated by nested adaptive quadrature.
/// Throws QuadratureError when the error estimate exceeds the tolerance.
double a_inner_quadrature(const std::function<double(double, double)>& h, int a, int b,
                          const InnerProductOptions& opts = {});
QuadratureResult a_inner_quadrature_full(const std::function<double(double, double)>& h,
                                         int a, int b, const InnerProductOptions& opts = {});

/// Quadrature oracle for the complex-plane skew inner product between P_a(z)
/// and P_b(conj z) against the Ginibre complex weight
/// e^{-z^2/2-conj(z)^2/2} erfc(sqrt(2)|Im z|). The integral is reduced to the
/// upper half-plane; the phase convention is fixed so that A[1] + B[1] is the
/// real block-diagonal skew form with constants sqrt(2 pi) Gamma(2j-1).
/// g is the bracket g(z, conj z); it must be real-valued and conjugation
/// symmetric for the result to be real.
double b_inner_quadrature(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& g,
    int a, int b, const InnerProductOptions& opts = {});
QuadratureResult b_inner_quadrature_full(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& g,
    int a, int b, const InnerProductOptions& opts = {});

namespace detail {

/// Cached lgamma values on the integer and half-integer grids:
/// lgamma_int(k) = lgamma(k) for k >= 1, lgamma_half(m) = lgamma(m - 1/2)
/// for m >= 1. All closed forms in this library only need these arguments.
class GammaTables {
public:
    explicit GammaTables(int cap);
    double lgamma_int(int k) const { return lg_int_[static_cast<std::size_t>(k)]; }
    double lgamma_half(int m) const { return lg_half_[static_cast<std::size_t>(m)]; }
    int cap() const { return cap_; }

private:
    int cap_;
    std::vector<double> lg_int_, lg_half_;
};

/// log f^{(r,s)}_{2k1-2,2k2-1}; tables must cover k1+k2+(r+s)/2.
double f_entry_log(const GammaTables& tables, int r, int s, int k1, int k2,
                   bool include_error_term = true);

/// Streaming evaluator of log E(j, k) for fixed j and k = 1, 2, 3, ...
class ETermStream {
public:
    ETermStream(const GammaTables& tables, int j) : tables_(&tables), j_(j) {}
    /// advance to the next k and return log E(j, k)
    double next();
    int k() const { return k_; }

private:
    const GammaTables* tables_;
    int j_;
    int k_ = 0;
    LogSumAccumulator acc_;
};

}  // namespace detail

}  // namespace ginstat

#endif
