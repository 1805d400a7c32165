#ifndef GINSTAT_VERIFY_HPP
#define GINSTAT_VERIFY_HPP

#include <cstdint>
#include <vector>

#include "ginstat/report.hpp"

namespace ginstat {

/// Oracle suites cross-checking the closed forms against independent
/// computations (quadrature, pivoted factorization, polarization identities).
/// The same checks back the `verify` command and the acceptance gates.

/// Closed-form skew entries vs the 2D quadrature oracle, and the
/// block-diagonal skew-orthogonality of A[1] + B[1].
std::vector<VerifyCheck> verify_skew(double entry_tol = 1e-6, double orth_tol = 1e-5,
                                     int k_max = 4, int j_max = 3);

/// Cyclic tridiagonal inverses vs pivoted LU, determinant-formula ratio
/// constancy, and Wick moments vs 3D quadrature.
std::vector<VerifyCheck> verify_appendix(std::uint64_t seed = 0xA11CEULL,
                                         int inverse_cases = 200,
                                         double residual_tol = 1e-12,
                                         double wick_tol = 1e-6);

/// Internal consistency: the two covariance routes, the variance formula,
/// finite differences of the determinantal MGF, and scaling invariance.
std::vector<VerifyCheck> verify_cross(double two_path_tol = 1e-10, int n_max = 20);

std::vector<VerifyCheck> run_verify_suite(const std::string& suite,
                                          std::uint64_t seed = 0xA11CEULL);

}  // namespace ginstat

#endif
