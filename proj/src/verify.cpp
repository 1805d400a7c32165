#include "ginstat/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ginstat/appendix.hpp"
#include "ginstat/asymptotics.hpp"
#include "ginstat/cumulants.hpp"
#include "ginstat/skew_basis.hpp"
#include "ginstat/special.hpp"

namespace ginstat {

namespace {

double rel_err(double observed, double expected) {
    return std::fabs(observed - expected) / std::fabs(expected);
}

/// 3D Gaussian-moment quadrature oracle: iterated adaptive integration of
/// x1^m1 x2^m2 x3^m3 exp(-x^T A x) over R^3.
double gaussian_moment_quadrature(const std::vector<int>& mult, const Eigen::MatrixXd& A) {
    QuadratureOptions inner{1e-11, 1e-10, 2000};
    QuadratureOptions mid{1e-10, 1e-9, 2000};
    QuadratureOptions outer{1e-9, 1e-9, 2000};
    auto pw = [](double x, int p) {
        double r = 1.0;
        for (int i = 0; i < p; ++i) r *= x;
        return r;
    };
    auto f3 = [&](double x1) {
        auto f2 = [&](double x2) {
            auto f1 = [&](double x3) {
                Eigen::Vector3d x(x1, x2, x3);
                const double q = x.dot(A * x);
                if (q > 600.0) return 0.0;
                return pw(x1, mult[0]) * pw(x2, mult[1]) * pw(x3, mult[2]) *
                       std::exp(-q);
            };
            return integrate_real_line(f1, inner).value;
        };
        return integrate_real_line(f2, mid).value;
    };
    return integrate_real_line(f3, outer).value;
}

}  // namespace

std::vector<VerifyCheck> verify_skew(double entry_tol, double orth_tol, int k_max,
                                     int j_max) {
    std::vector<VerifyCheck> checks;

    // closed form vs quadrature on the (r,s,k1,k2) grid
    {
        double worst = 0.0;
        std::string worst_at;
        for (int r = 0; r <= 4; r += 2)
            for (int s = 0; s <= 4; s += 2) {
                auto h = [r, s](double x, double y) {
                    double vx = 1.0, vy = 1.0;
                    for (int i = 0; i < r; ++i) vx *= x;
                    for (int i = 0; i < s; ++i) vy *= y;
                    return vx * vy;
                };
                for (int k1 = 1; k1 <= k_max; ++k1)
                    for (int k2 = 1; k2 <= k_max; ++k2) {
                        const double closed = f_entry(r, s, k1, k2).value.value();
                        const double oracle =
                            a_inner_quadrature(h, 2 * k1 - 2, 2 * k2 - 1);
                        const double err = rel_err(oracle, closed);
                        if (err > worst) {
                            worst = err;
                            worst_at = "(r=" + std::to_string(r) +
                                       ",s=" + std::to_string(s) +
                                       ",k1=" + std::to_string(k1) +
                                       ",k2=" + std::to_string(k2) + ")";
                        }
                    }
            }
        checks.push_back({"skew", "f_entry_vs_quadrature", worst, entry_tol,
                          worst <= entry_tol, "worst at " + worst_at});
    }

    // skew-orthogonality of A[1] + B[1] for polynomial indices < 2 j_max
    {
        const int dim = 2 * j_max;
        auto one_real = [](double, double) { return 1.0; };
        auto one_complex = [](std::complex<double>, std::complex<double>) {
            return std::complex<double>(1.0, 0.0);
        };
        Eigen::MatrixXd combined(dim, dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                if (a == b) {
                    combined(a, b) = 0.0;
                    continue;
                }
                combined(a, b) = a_inner_quadrature(one_real, a, b) +
                                 b_inner_quadrature(one_complex, a, b);
            }
        double worst = 0.0;
        std::string worst_at;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                const int j = a / 2 + 1;
                const int k = b / 2 + 1;
                double expected = 0.0;
                if (a % 2 == 0 && b % 2 == 1 && j == k)
                    expected = std::sqrt(2.0 * M_PI) * std::exp(log_gamma(2.0 * j - 1.0));
                else if (a % 2 == 1 && b % 2 == 0 && j == k)
                    expected = -std::sqrt(2.0 * M_PI) * std::exp(log_gamma(2.0 * j - 1.0));
                const double scale =
                    std::sqrt(2.0 * M_PI) *
                    std::exp(0.5 * (log_gamma(2.0 * j - 1.0) + log_gamma(2.0 * k - 1.0)));
                const double err = std::fabs(combined(a, b) - expected) / scale;
                if (err > worst) {
                    worst = err;
                    worst_at = "(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
                }
            }
        checks.push_back({"skew", "skew_orthogonality", worst, orth_tol,
                          worst <= orth_tol, "worst at " + worst_at});
    }
    return checks;
}

std::vector<VerifyCheck> verify_appendix(std::uint64_t seed, int inverse_cases,
                                         double residual_tol, double wick_tol) {
    std::vector<VerifyCheck> checks;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> m_dist(3, 12);
    std::uniform_real_distribution<double> z_dist(-0.9, 0.9);

    // rank-2-update inverse vs direct pivoted factorization
    {
        double worst_residual = 0.0;
        double worst_vs_lu = 0.0;
        for (int c = 0; c < inverse_cases; ++c) {
            const int m = m_dist(rng);
            std::vector<int> alpha(static_cast<std::size_t>(m - 1));
            for (auto& a : alpha) a = (rng() & 1) ? 1 : -1;
            const double z = z_dist(rng);
            const CyclicTridiagonal A = build_cyclic(m, alpha, z);
            const Eigen::MatrixXd dense = A.dense();
            const Eigen::MatrixXd inv = invert_cyclic(A);
            const double residual =
                (dense * inv - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
            worst_residual = std::max(worst_residual, residual);
            const Eigen::MatrixXd lu_inv = dense.partialPivLu().inverse();
            worst_vs_lu =
                std::max(worst_vs_lu, (inv - lu_inv).cwiseAbs().maxCoeff());
        }
        checks.push_back({"appendix", "cyclic_inverse_residual", worst_residual,
                          residual_tol, worst_residual <= residual_tol,
                          std::to_string(inverse_cases) + " randomized cases"});
        checks.push_back({"appendix", "cyclic_inverse_vs_lu", worst_vs_lu, 1e-11,
                          worst_vs_lu <= 1e-11, "entrywise against pivoted LU"});
    }

    // determinant-formula ratio: constant in z for fixed (m, alpha)
    {
        double worst_spread = 0.0;
        double logged_ratio = 0.0;
        for (int m : {3, 5, 8, 12}) {
            std::vector<int> alpha(static_cast<std::size_t>(m - 1));
            for (auto& a : alpha) a = (rng() & 1) ? 1 : -1;
            double r_min = 0.0, r_max = 0.0;
            bool first = true;
            for (double z : {-0.7, 0.2, 0.8}) {
                const DetReport report = det_cyclic(build_cyclic(m, alpha, z));
                if (first) {
                    r_min = r_max = report.ratio;
                    first = false;
                } else {
                    r_min = std::min(r_min, report.ratio);
                    r_max = std::max(r_max, report.ratio);
                }
                logged_ratio = report.ratio;
            }
            worst_spread = std::max(worst_spread, (r_max - r_min) / std::fabs(r_min));
        }
        checks.push_back({"appendix", "det_formula_ratio_constant", worst_spread, 1e-9,
                          worst_spread <= 1e-9,
                          "last ratio " + std::to_string(logged_ratio)});
    }

    // Wick pairing evaluator vs 3D quadrature
    {
        Eigen::MatrixXd A0(3, 3);
        A0 << 1.0, -0.25, 0.1, -0.25, 1.2, -0.3, 0.1, -0.3, 0.9;
        std::vector<std::vector<int>> cases = {
            {0, 0, 0}, {2, 0, 0}, {1, 1, 0}, {2, 2, 0}, {2, 1, 1}, {4, 0, 0}};
        double worst = 0.0;
        for (const auto& mult : cases) {
            const double exact = gaussian_moment(mult, A0);
            const double oracle = gaussian_moment_quadrature(mult, A0);
            worst = std::max(worst, rel_err(oracle, exact));
        }
        checks.push_back({"appendix", "wick_vs_quadrature", worst, wick_tol,
                          worst <= wick_tol,
                          std::to_string(cases.size()) + " moment cases, 3D"});
    }
    return checks;
}

std::vector<VerifyCheck> verify_cross(double two_path_tol, int n_max) {
    std::vector<VerifyCheck> checks;

    // covariance via the trace formula (polarization) vs the direct formula
    {
        double worst = 0.0;
        for (int p = 0; p <= 4; p += 2)
            for (int q = p; q <= 4; q += 2)
                for (int n : {1, 2, 5, 10, n_max}) {
                    const EvenPolynomial Pp = EvenPolynomial::monomial(p);
                    const EvenPolynomial Pq = EvenPolynomial::monomial(q);
                    double via_kappa;
                    if (p == q) {
                        via_kappa = cumulant(Pp, 2, n).value;
                    } else {
                        const double k_sum = cumulant(Pp + Pq, 2, n).value;
                        via_kappa =
                            0.5 * (k_sum - cumulant(Pp, 2, n).value -
                                   cumulant(Pq, 2, n).value);
                    }
                    const double direct = covariance_monomials(p, q, n);
                    worst = std::max(worst, rel_err(via_kappa, direct));
                }
        checks.push_back({"cross", "two_path_kappa2", worst, two_path_tol,
                          worst <= two_path_tol,
                          "p,q in {0,2,4}, n up to " + std::to_string(n_max)});
    }

    // kappa2 of the counting statistic vs the closed-form variance
    {
        double worst = 0.0;
        const EvenPolynomial one = EvenPolynomial::constant(1.0);
        for (int n : {1, 2, 5, 20, 50})
            worst = std::max(
                worst, rel_err(cumulant(one, 2, n).value, variance_nr_exact(n)));
        checks.push_back({"cross", "kappa2_vs_variance_formula", worst, 1e-10,
                          worst <= 1e-10, "n up to 50"});
    }

    // central differences of log MGF reproduce kappa1 and kappa2
    {
        double worst1 = 0.0, worst2 = 0.0;
        for (const auto& P :
             {EvenPolynomial::constant(1.0), EvenPolynomial::monomial(2)}) {
            for (int n : {1, 2, 4}) {
                const double h1 = 1e-3;
                const double k1_fd = (std::log(mgf_determinant(P, h1, n)) -
                                      std::log(mgf_determinant(P, -h1, n))) /
                                     (2.0 * h1);
                worst1 = std::max(worst1, rel_err(k1_fd, cumulant(P, 1, n).value));
                const double h2 = 0.05;
                const double k2_fd = (std::log(mgf_determinant(P, h2, n)) +
                                      std::log(mgf_determinant(P, -h2, n))) /
                                     (h2 * h2);
                worst2 = std::max(worst2, rel_err(k2_fd, cumulant(P, 2, n).value));
            }
        }
        checks.push_back({"cross", "mgf_derivative_kappa1", worst1, 1e-5,
                          worst1 <= 1e-5, "central difference h=1e-3"});
        checks.push_back({"cross", "mgf_derivative_kappa2", worst2, 1e-2,
                          worst2 <= 1e-2, "central difference h=0.05"});
    }

    // counting statistic does not depend on the eigenvalue scaling
    {
        const EvenPolynomial one = EvenPolynomial::constant(1.0);
        double worst = 0.0;
        for (int n : {1, 5, 20})
            for (int nu : {1, 2}) {
                const Eigen::MatrixXd a = m_nu_matrix(one, nu, n, true).entries;
                const Eigen::MatrixXd b = m_nu_matrix(one, nu, n, false).entries;
                worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
            }
        checks.push_back({"cross", "scaling_invariance_counting", worst, 0.0,
                          worst <= 0.0, "scaled vs raw M matrices for P = 1"});
    }

    // composition enumeration is complete
    {
        bool ok = true;
        for (int l = 1; l <= 10; ++l)
            ok = ok && integer_compositions(l).size() == (1ULL << (l - 1));
        checks.push_back({"cross", "composition_count", ok ? 0.0 : 1.0, 0.0, ok,
                          "2^(l-1) compositions for l <= 10"});
    }
    return checks;
}

std::vector<VerifyCheck> run_verify_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<VerifyCheck> checks;
    const bool all = suite == "all";
    if (all || suite == "skew") {
        auto c = verify_skew();
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (all || suite == "appendix") {
        auto c = verify_appendix(seed);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (all || suite == "cross") {
        auto c = verify_cross();
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (checks.empty())
        throw std::invalid_argument("run_verify_suite: unknown suite '" + suite + "'");
    return checks;
}

}  // namespace ginstat
