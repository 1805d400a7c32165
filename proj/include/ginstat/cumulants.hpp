#ifndef GINSTAT_CUMULANTS_HPP
#define GINSTAT_CUMULANTS_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ginstat/even_poly.hpp"
#include "ginstat/skew_basis.hpp"

namespace ginstat {

enum class Scaling { raw, by_sqrt_N };
enum class CumulantMethod { trace_formula, covariance_formula, mgf_derivative, monte_carlo };

std::string to_string(Scaling s);
std::string to_string(CumulantMethod m);

/// One exact (or estimated) cumulant value with full provenance.
struct CumulantReport {
    int n = 0;
    int l = 0;
    EvenPolynomial statistic;
    Scaling scaling = Scaling::by_sqrt_N;
    double value = 0.0;
    CumulantMethod method = CumulantMethod::trace_formula;
};

/// The n x n matrix whose trace products generate the cumulants of an even
/// linear statistic: entry (j,k) expands (f(x)+f(y))^nu into monomials and
/// sums the closed-form skew entries with polynomial indices (2j-2, 2k-1),
/// normalized by sqrt(2 pi Gamma(2j-1) Gamma(2k-1)).
struct MNuMatrix {
    int n = 0;
    int nu = 0;
    bool scaled = true;
    Eigen::MatrixXd entries;
};

struct CumulantOptions {
    int degree_cap = 40;  // cap on nu * deg(P) in the multinomial expansion
};

MNuMatrix m_nu_matrix(const EvenPolynomial& P, int nu, int n, bool scaled = true,
                      const CumulantOptions& opts = {});

/// Exact l-th cumulant of the linear statistic sum P(lambda_j / sqrt(N)) over
/// the real eigenvalues, N = 2n, via the composition sum over trace products.
CumulantReport cumulant(const EvenPolynomial& P, int l, int n,
                        const CumulantOptions& opts = {});

/// All compositions (ordered tuples of positive integers) summing to l.
std::vector<std::vector<int>> integer_compositions(int l);

/// Exact variance of the number of real eigenvalues of the 2n x 2n ensemble,
/// evaluated in log-stable arithmetic in O(n^2) time.
double variance_nr_exact(int n);

/// Exact mean of the number of real eigenvalues (first cumulant of P = 1).
double mean_nr_exact(int n);

/// Exact covariance of the even monomial linear statistics x^p and x^q under
/// the sqrt(N) scaling, via the polarization identity
/// 2 C_{p,q} = kappa2(x^p + x^q) - kappa2(x^p) - kappa2(x^q) reduced to a
/// single sum minus a double sum of closed-form entries. Symmetric in (p,q);
/// C_{0,0} is Var(N_R).
double covariance_monomials(int p, int q, int n);

/// Moment generating function E exp(s X(f)) of the real-eigenvalue linear
/// statistic X(f) = sum f(lambda_j), as the determinant of I + K with K built
/// from quadrature entries of e^{s f(x) + s f(y)} - 1. n <= 8.
double mgf_determinant(const std::function<double(double)>& f, double s, int n,
                       const InnerProductOptions& opts = {});

/// Same, with f(lambda) = P(lambda / sqrt(2n)).
double mgf_determinant(const EvenPolynomial& P, double s, int n,
                       const InnerProductOptions& opts = {});

/// Normalized cyclic trace sum of closed-form entries:
///   n^{-M} sum_{k_1..k_m} prod_i f^{(r_i,s_i)}_{2k_i-2, 2k_{i+1}-1}
///                                 / (sqrt(2 pi) Gamma(2k_i - 1))
/// with k_{m+1} = k_1 and M = sum_i (r_i + s_i)/2. The powers are the actual
/// (even) monomial powers. With leading_only the entries keep only their
/// leading Gamma factor.
double trace_sum_z(const std::vector<std::pair<int, int>>& powers, int n,
                   bool leading_only = false);

}  // namespace ginstat

#endif
