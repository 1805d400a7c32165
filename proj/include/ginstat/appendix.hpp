#ifndef GINSTAT_APPENDIX_HPP
#define GINSTAT_APPENDIX_HPP

#include <Eigen/Dense>
#include <vector>

namespace ginstat {

/// Symmetric cyclic tridiagonal matrix: unit diagonal, off-diagonal entries
/// -alpha_i/2 with alpha_i in {+1,-1}, and corner entries (1,m), (m,1) equal
/// to -z/2.
struct CyclicTridiagonal {
    int m = 0;
    std::vector<int> alpha;  // m-1 signs
    double z = 0.0;

    Eigen::MatrixXd dense() const;
    /// product of the off-diagonal signs
    int sign_product() const;
};

/// Validates sizes and signs. m >= 3, |alpha| = m-1, alpha_i in {+1,-1}.
CyclicTridiagonal build_cyclic(int m, std::vector<int> alpha, double z);

/// Determinant by pivoted LU (ground truth) together with the closed-form
/// candidate (m-1) 2^{-m} (z - A_m)((m-1) z + (m+1) A_m) and their ratio.
/// The two disagree by a constant factor; both are reported.
struct DetReport {
    double value = 0.0;          // pivoted-factorization determinant
    double formula_value = 0.0;  // closed-form candidate
    double ratio = 0.0;          // formula_value / value (NaN when singular)
};

DetReport det_cyclic(const CyclicTridiagonal& A);

/// Closed-form inverse of the z = 0 tridiagonal part:
/// entries d_r d_s 2 r (m+1-s)/(m+1) for r <= s (1-based), where
/// d_j = prod_{i<j} alpha_i.
Eigen::MatrixXd tridiagonal_inverse_closed_form(int m, const std::vector<int>& alpha);

/// Inverse via the rank-2 corner update of the tridiagonal base case
/// (Woodbury with a 2x2 capacitance matrix). Throws SingularMatrixError with
/// the offending z when the determinant vanishes.
Eigen::MatrixXd invert_cyclic(const CyclicTridiagonal& A);

/// Gaussian moment by Wick pairing enumeration:
///   integral over R^m of prod_j x_j^{mult_j} exp(-x^T A x) dx
/// = pi^{m/2} det(A)^{-1/2} sum over perfect pairings of prod (A^{-1})_{ab}/2,
/// with variable j occupying mult_j pairing slots. Zero when the total
/// multiplicity is odd; throws std::domain_error when A is not symmetric
/// positive definite.
double gaussian_moment(const std::vector<int>& multiplicities, const Eigen::MatrixXd& A);

/// Number of perfect pairings of 2M slots, (2M-1)!!.
double double_factorial_odd(int M);

}  // namespace ginstat

#endif
