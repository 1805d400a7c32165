#include "ginstat/cumulants.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "ginstat/errors.hpp"
#include "ginstat/special.hpp"

namespace ginstat {

namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;  // ln sqrt(2 pi)
constexpr double kLn2Pi = 1.837877066409345483560659472811;

using detail::ETermStream;
using detail::GammaTables;

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// monomial weights of (f(x)+f(y))^nu for f with even coefficient map:
// (r, s) -> sum_i C(nu,i) [x^r](f^i) [y^s](f^{nu-i})
std::map<std::pair<int, int>, double> bivariate_power_weights(const EvenPolynomial& f,
                                                              int nu) {
    std::vector<EvenPolynomial> powers(static_cast<std::size_t>(nu) + 1);
    powers[0] = EvenPolynomial::constant(1.0);
    for (int i = 1; i <= nu; ++i) powers[static_cast<std::size_t>(i)] =
        powers[static_cast<std::size_t>(i - 1)] * f;
    std::map<std::pair<int, int>, double> weights;
    for (int i = 0; i <= nu; ++i) {
        const double binom = binomial(nu, i);
        for (const auto& [r, cr] : powers[static_cast<std::size_t>(i)].coefficients())
            for (const auto& [s, cs] :
                 powers[static_cast<std::size_t>(nu - i)].coefficients()) {
                weights[{r, s}] += binom * cr * cs;
            }
    }
    return weights;
}

// Adds w * f^{(r,s)}_{2j-2,2k-1} / sqrt(2 pi G(2j-1) G(2k-1)) over all (j,k)
// into M, streaming the error-term sums row by row.
void accumulate_term(Eigen::MatrixXd& M, const GammaTables& tables, int n, int r, int s,
                     double w) {
    for (int j = 1; j <= n; ++j) {
        const double row_norm = kLnSqrt2Pi + 0.5 * tables.lgamma_int(2 * j - 1);
        ETermStream stream(tables, j + r / 2);
        // error-term index k2 + s/2 - 1 starts at s/2; skip the first s/2 - 1
        double log_e = 0.0;
        if (s > 0)
            for (int kk = 1; kk < s / 2; ++kk) log_e = stream.next();
        for (int k = 1; k <= n; ++k) {
            const double lognorm = row_norm + 0.5 * tables.lgamma_int(2 * k - 1);
            const double lead = tables.lgamma_half(j + k + (r + s) / 2 - 1);
            double value;
            if (s == 0) {
                value = std::exp(lead - lognorm);
            } else {
                log_e = stream.next();
                value = std::exp(lead - lognorm) + s * std::exp(log_e - lognorm);
            }
            M(j - 1, k - 1) += w * value;
        }
    }
}

double trace_of_product(const std::vector<const Eigen::MatrixXd*>& mats) {
    const std::size_t m = mats.size();
    if (m == 1) return mats[0]->trace();
    if (m == 2) return mats[0]->cwiseProduct(mats[1]->transpose()).sum();
    Eigen::MatrixXd acc = *mats[0];
    for (std::size_t i = 1; i + 1 < m; ++i) acc = acc * (*mats[i]);
    return acc.cwiseProduct(mats[m - 1]->transpose()).sum();
}

}  // namespace

std::string to_string(Scaling s) {
    return s == Scaling::raw ? "raw" : "by_sqrt_N";
}

std::string to_string(CumulantMethod m) {
    switch (m) {
        case CumulantMethod::trace_formula: return "trace_formula";
        case CumulantMethod::covariance_formula: return "covariance_formula";
        case CumulantMethod::mgf_derivative: return "mgf_derivative";
        case CumulantMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

MNuMatrix m_nu_matrix(const EvenPolynomial& P, int nu, int n, bool scaled,
                      const CumulantOptions& opts) {
    if (nu < 1) throw std::domain_error("m_nu_matrix: nu must be >= 1");
    if (n < 1) throw std::domain_error("m_nu_matrix: n must be >= 1");
    if (static_cast<long>(nu) * P.max_degree() > opts.degree_cap)
        throw CapacityError("m_nu_matrix: nu * deg(P) = " +
                            std::to_string(nu * P.max_degree()) + " exceeds cap " +
                            std::to_string(opts.degree_cap));
    const double N = 2.0 * n;
    const EvenPolynomial f = scaled ? P.scaled_by_inv_sqrt(N) : P;
    const auto weights = bivariate_power_weights(f, nu);
    const int max_power = nu * f.max_degree();
    GammaTables tables(2 * n + max_power + 4);
    MNuMatrix M;
    M.n = n;
    M.nu = nu;
    M.scaled = scaled;
    M.entries = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [rs, w] : weights) {
        if (w == 0.0) continue;
        accumulate_term(M.entries, tables, n, rs.first, rs.second, w);
    }
    return M;
}

std::vector<std::vector<int>> integer_compositions(int l) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // iterative first-part recursion, lexicographic by construction
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int first = 1; first <= rest; ++first) {
            cur.push_back(first);
            rec(rest - first);
            cur.pop_back();
        }
    };
    rec(l);
    return out;
}

CumulantReport cumulant(const EvenPolynomial& P, int l, int n,
                        const CumulantOptions& opts) {
    if (l < 1) throw std::domain_error("cumulant: order l must be >= 1");
    std::vector<MNuMatrix> mats;
    mats.reserve(static_cast<std::size_t>(l));
    for (int nu = 1; nu <= l; ++nu) mats.push_back(m_nu_matrix(P, nu, n, true, opts));
    double total = 0.0;
    for (const auto& comp : integer_compositions(l)) {
        const int m = static_cast<int>(comp.size());
        std::vector<const Eigen::MatrixXd*> factors;
        factors.reserve(comp.size());
        double denom = 1.0;
        for (int nu : comp) {
            factors.push_back(&mats[static_cast<std::size_t>(nu - 1)].entries);
            denom *= factorial(nu);
        }
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        total += sign / m * trace_of_product(factors) / denom;
    }
    CumulantReport report;
    report.n = n;
    report.l = l;
    report.statistic = P;
    report.scaling = Scaling::by_sqrt_N;
    report.value = factorial(l) * total;
    report.method = CumulantMethod::trace_formula;
    return report;
}

double variance_nr_exact(int n) {
    if (n < 1) throw std::domain_error("variance_nr_exact: n must be >= 1");
    GammaTables tables(2 * n + 2);
    double single = 0.0;
    for (int k = 1; k <= n; ++k)
        single += std::exp(tables.lgamma_half(2 * k - 1) - tables.lgamma_int(2 * k - 1));
    double dbl = 0.0;
    for (int k1 = 1; k1 <= n; ++k1)
        for (int k2 = 1; k2 <= n; ++k2)
            dbl += std::exp(2.0 * tables.lgamma_half(k1 + k2 - 1) -
                            tables.lgamma_int(2 * k1 - 1) - tables.lgamma_int(2 * k2 - 1));
    return 2.0 * std::sqrt(2.0) / std::sqrt(M_PI) * single - 2.0 / M_PI * dbl;
}

double mean_nr_exact(int n) {
    if (n < 1) throw std::domain_error("mean_nr_exact: n must be >= 1");
    GammaTables tables(2 * n + 2);
    double sum = 0.0;
    for (int k = 1; k <= n; ++k)
        sum += std::exp(M_LN2 + tables.lgamma_half(2 * k - 1) - kLnSqrt2Pi -
                        tables.lgamma_int(2 * k - 1));
    return sum;
}

double covariance_monomials(int p, int q, int n) {
    if (p < 0 || q < 0 || p % 2 != 0 || q % 2 != 0)
        throw std::domain_error("covariance_monomials: p, q must be even and >= 0");
    if (n < 1) throw std::domain_error("covariance_monomials: n must be >= 1");
    GammaTables tables(2 * n + (p + q) / 2 + 4);
    const double scale = 0.5 * (p + q) * std::log(2.0 * n);  // sqrt(N)^{p+q}, N = 2n

    double single = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double lognorm = kLnSqrt2Pi + tables.lgamma_int(2 * k - 1) + scale;
        for (auto [r, s] : {std::pair{p, q}, {q, p}, {0, p + q}, {p + q, 0}})
            single += std::exp(detail::f_entry_log(tables, r, s, k, k) - lognorm);
    }

    // log entries of U = f^{(p,0)} + f^{(0,p)} at (k1,k2) and
    // V = f^{(q,0)} + f^{(0,q)} at (k2,k1); both row-streamable.
    auto fill = [&](int power, Eigen::MatrixXd& L) {
        L.resize(n, n);
        for (int row = 1; row <= n; ++row) {
            ETermStream stream(tables, row);  // E(row, col + power/2 - 1)
            double log_e = 0.0;
            if (power > 0)
                for (int kk = 1; kk < power / 2; ++kk) log_e = stream.next();
            for (int col = 1; col <= n; ++col) {
                const double lead = tables.lgamma_half(row + col + power / 2 - 1);
                double v;
                if (power == 0) {
                    v = std::log(2.0) + lead;
                } else {
                    log_e = stream.next();
                    const LogScaledReal sum =
                        LogScaledReal::from_log(1, M_LN2 + lead) +
                        LogScaledReal::from_log(1, std::log(double(power)) + log_e);
                    v = sum.log_magnitude;
                }
                L(row - 1, col - 1) = v;
            }
        }
    };
    Eigen::MatrixXd logU, logV;
    fill(p, logU);  // logU(k1-1, k2-1) = log (f^{(p,0)} + f^{(0,p)})_{k1,k2}
    fill(q, logV);  // logV(k2-1, k1-1) = log (f^{(q,0)} + f^{(0,q)})_{k2,k1}

    double dbl = 0.0;
    for (int k1 = 1; k1 <= n; ++k1) {
        const double lg1 = tables.lgamma_int(2 * k1 - 1);
        for (int k2 = 1; k2 <= n; ++k2) {
            const double lognorm = kLn2Pi + lg1 + tables.lgamma_int(2 * k2 - 1) + scale;
            dbl += std::exp(logU(k1 - 1, k2 - 1) + logV(k2 - 1, k1 - 1) - lognorm);
        }
    }
    return single - dbl;
}

double mgf_determinant(const std::function<double(double)>& f, double s, int n,
                       const InnerProductOptions& opts) {
    if (n < 1) throw std::domain_error("mgf_determinant: n must be >= 1");
    if (n > 8)
        throw CapacityError("mgf_determinant: n = " + std::to_string(n) +
                            " beyond the 2D-quadrature budget (n <= 8)");
    GammaTables tables(2 * n + 2);
    auto h = [&](double x, double y) { return std::expm1(s * (f(x) + f(y))); };
    Eigen::MatrixXd K(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            const double lognorm = kLnSqrt2Pi + 0.5 * tables.lgamma_int(2 * j - 1) +
                                   0.5 * tables.lgamma_int(2 * k - 1);
            K(j - 1, k - 1) =
                a_inner_quadrature(h, 2 * j - 2, 2 * k - 1, opts) * std::exp(-lognorm);
        }
    return (Eigen::MatrixXd::Identity(n, n) + K).determinant();
}

double mgf_determinant(const EvenPolynomial& P, double s, int n,
                       const InnerProductOptions& opts) {
    const EvenPolynomial scaled = P.scaled_by_inv_sqrt(2.0 * n);
    return mgf_determinant([&scaled](double x) { return scaled(x); }, s, n, opts);
}

double trace_sum_z(const std::vector<std::pair<int, int>>& powers, int n,
                   bool leading_only) {
    const int m = static_cast<int>(powers.size());
    if (m < 1) throw std::domain_error("trace_sum_z: need at least one factor");
    if (n < 1) throw std::domain_error("trace_sum_z: n must be >= 1");
    int total_power = 0;
    for (auto [r, s] : powers) {
        if (r < 0 || s < 0 || r % 2 != 0 || s % 2 != 0)
            throw std::domain_error("trace_sum_z: powers must be even and >= 0");
        total_power += r + s;
    }
    const double budget = static_cast<double>(m) * n * n * (m > 2 ? n : 1);
    if (budget > 4e9)
        throw CapacityError("trace_sum_z: m=" + std::to_string(m) +
                            ", n=" + std::to_string(n) + " beyond compute budget");
    GammaTables tables(2 * n + total_power / 2 + 4);
    const double ln_n = std::log(static_cast<double>(n));

    // log factor matrices L_i(k1-1, k2-1) =
    //   log[ f^{(r_i,s_i)}_{2k1-2,2k2-1} / (sqrt(2 pi) G(2k1-1)) ] - (r+s)/2 ln n
    std::vector<Eigen::MatrixXd> logs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        auto [r, s] = powers[static_cast<std::size_t>(i)];
        Eigen::MatrixXd& L = logs[static_cast<std::size_t>(i)];
        L.resize(n, n);
        const double power_scale = 0.5 * (r + s) * ln_n;
        for (int k1 = 1; k1 <= n; ++k1) {
            const double lognorm =
                kLnSqrt2Pi + tables.lgamma_int(2 * k1 - 1) + power_scale;
            ETermStream stream(tables, k1 + r / 2);
            double log_e = 0.0;
            if (s > 0 && !leading_only)
                for (int kk = 1; kk < s / 2; ++kk) log_e = stream.next();
            for (int k2 = 1; k2 <= n; ++k2) {
                const double lead = tables.lgamma_half(k1 + k2 + (r + s) / 2 - 1);
                double logf = lead;
                if (s > 0 && !leading_only) {
                    log_e = stream.next();
                    logf = (LogScaledReal::from_log(1, lead) +
                            LogScaledReal::from_log(1, std::log(double(s)) + log_e))
                               .log_magnitude;
                }
                L(k1 - 1, k2 - 1) = logf - lognorm;
            }
        }
    }

    if (m == 1) {
        LogSumAccumulator acc;
        for (int k = 0; k < n; ++k) acc.add_log_term(logs[0](k, k));
        return std::exp(acc.log_sum());
    }
    if (m == 2) {
        LogSumAccumulator acc;
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                acc.add_log_term(logs[0](k1, k2) + logs[1](k2, k1));
        return std::exp(acc.log_sum());
    }
    // exponentiate each factor against its own max; entries are positive so
    // the rescaled product trace has no cancellation
    double log_scale = 0.0;
    std::vector<Eigen::MatrixXd> factors(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double c = logs[static_cast<std::size_t>(i)].maxCoeff();
        log_scale += c;
        factors[static_cast<std::size_t>(i)] =
            (logs[static_cast<std::size_t>(i)].array() - c).exp().matrix();
    }
    Eigen::MatrixXd acc = factors[0];
    for (int i = 1; i + 1 < m; ++i) acc = acc * factors[static_cast<std::size_t>(i)];
    const double tr = acc.cwiseProduct(factors[static_cast<std::size_t>(m - 1)].transpose()).sum();
    return tr * std::exp(log_scale);
}

}  // namespace ginstat
