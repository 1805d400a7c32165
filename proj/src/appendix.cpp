#include "ginstat/appendix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ginstat/errors.hpp"

namespace ginstat {

Eigen::MatrixXd CyclicTridiagonal::dense() const {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    for (int i = 0; i < m - 1; ++i) {
        A(i, i + 1) = -0.5 * alpha[static_cast<std::size_t>(i)];
        A(i + 1, i) = A(i, i + 1);
    }
    A(0, m - 1) = -0.5 * z;
    A(m - 1, 0) = -0.5 * z;
    return A;
}

int CyclicTridiagonal::sign_product() const {
    int s = 1;
    for (int a : alpha) s *= a;
    return s;
}

CyclicTridiagonal build_cyclic(int m, std::vector<int> alpha, double z) {
    if (m < 3) throw std::domain_error("build_cyclic: m must be >= 3");
    if (static_cast<int>(alpha.size()) != m - 1)
        throw std::domain_error("build_cyclic: need exactly m-1 signs, got " +
                                std::to_string(alpha.size()));
    for (int a : alpha)
        if (a != 1 && a != -1)
            throw std::domain_error("build_cyclic: signs must be +1 or -1");
    return CyclicTridiagonal{m, std::move(alpha), z};
}

DetReport det_cyclic(const CyclicTridiagonal& A) {
    DetReport report;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A.dense());
    report.value = lu.determinant();
    const double Am = A.sign_product();
    report.formula_value = (A.m - 1) * std::pow(2.0, -A.m) * (A.z - Am) *
                           ((A.m - 1) * A.z + (A.m + 1) * Am);
    report.ratio = report.formula_value / report.value;
    return report;
}

Eigen::MatrixXd tridiagonal_inverse_closed_form(int m, const std::vector<int>& alpha) {
    if (static_cast<int>(alpha.size()) != m - 1)
        throw std::domain_error("tridiagonal_inverse_closed_form: bad sign count");
    std::vector<double> d(static_cast<std::size_t>(m) + 1, 1.0);
    for (int j = 2; j <= m; ++j)
        d[static_cast<std::size_t>(j)] =
            d[static_cast<std::size_t>(j - 1)] * alpha[static_cast<std::size_t>(j - 2)];
    Eigen::MatrixXd inv(m, m);
    for (int r = 1; r <= m; ++r)
        for (int s = r; s <= m; ++s) {
            const double v = d[static_cast<std::size_t>(r)] *
                             d[static_cast<std::size_t>(s)] * 2.0 * r * (m + 1 - s) /
                             (m + 1);
            inv(r - 1, s - 1) = v;
            inv(s - 1, r - 1) = v;
        }
    return inv;
}

Eigen::MatrixXd invert_cyclic(const CyclicTridiagonal& A) {
    const int m = A.m;
    const Eigen::MatrixXd sigma0 = tridiagonal_inverse_closed_form(m, A.alpha);
    if (A.z == 0.0) return sigma0;
    // corner update: A(z) = A(0) - z/2 (e_1 e_m^T + e_m e_1^T) = A(0) + R S^T
    // with R = -z/2 [e_1, e_m], S = [e_m, e_1]
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(m, 2);
    R(0, 0) = -0.5 * A.z;
    R(m - 1, 1) = -0.5 * A.z;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, 2);
    S(m - 1, 0) = 1.0;
    S(0, 1) = 1.0;
    const Eigen::MatrixXd sigma0R = sigma0 * R;              // m x 2
    const Eigen::MatrixXd StSigma0 = S.transpose() * sigma0; // 2 x m
    Eigen::Matrix2d F = Eigen::Matrix2d::Identity() + S.transpose() * sigma0R;
    const double detF = F(0, 0) * F(1, 1) - F(0, 1) * F(1, 0);
    if (std::fabs(detF) < 1e-10)
        throw SingularMatrixError("invert_cyclic: singular at z = " + std::to_string(A.z),
                                  A.z);
    Eigen::Matrix2d Finv;
    Finv << F(1, 1), -F(0, 1), -F(1, 0), F(0, 0);
    Finv /= detF;
    return sigma0 - sigma0R * Finv * StSigma0;
}

double double_factorial_odd(int M) {
    double r = 1.0;
    for (int k = 2 * M - 1; k > 1; k -= 2) r *= k;
    return r;
}

namespace {

double pairing_sum(std::vector<int>& slots, const Eigen::MatrixXd& C) {
    // recursive first-element matching over the remaining slot list
    if (slots.empty()) return 1.0;
    const int first = slots.front();
    double total = 0.0;
    for (std::size_t j = 1; j < slots.size(); ++j) {
        const int partner = slots[static_cast<std::size_t>(j)];
        std::vector<int> rest;
        rest.reserve(slots.size() - 2);
        for (std::size_t t = 1; t < slots.size(); ++t)
            if (t != j) rest.push_back(slots[t]);
        total += C(first, partner) * pairing_sum(rest, C);
    }
    return total;
}

}  // namespace

double gaussian_moment(const std::vector<int>& multiplicities, const Eigen::MatrixXd& A) {
    const int m = static_cast<int>(A.rows());
    if (A.cols() != m) throw std::domain_error("gaussian_moment: A must be square");
    if (static_cast<int>(multiplicities.size()) != m)
        throw std::domain_error("gaussian_moment: multiplicity count must match dim(A)");
    if (!A.isApprox(A.transpose(), 1e-12))
        throw std::domain_error("gaussian_moment: A must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("gaussian_moment: A must be positive definite");

    int total = 0;
    for (int mu : multiplicities) {
        if (mu < 0) throw std::domain_error("gaussian_moment: negative multiplicity");
        total += mu;
    }
    if (total % 2 != 0) return 0.0;
    if (total > 12)
        throw CapacityError("gaussian_moment: total multiplicity " +
                            std::to_string(total) + " beyond pairing budget (12)");

    double log_det = 0.0;
    for (int i = 0; i < m; ++i) log_det += std::log(es.eigenvalues()(i));
    const double normalization = std::exp(0.5 * m * std::log(M_PI) - 0.5 * log_det);
    if (total == 0) return normalization;

    // covariance of exp(-x^T A x) is A^{-1}/2
    const Eigen::MatrixXd C = 0.5 * A.inverse();
    std::vector<int> slots;
    slots.reserve(static_cast<std::size_t>(total));
    for (int j = 0; j < m; ++j)
        for (int c = 0; c < multiplicities[static_cast<std::size_t>(j)]; ++c)
            slots.push_back(j);
    return normalization * pairing_sum(slots, C);
}

}  // namespace ginstat
