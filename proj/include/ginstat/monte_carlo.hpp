#ifndef GINSTAT_MONTE_CARLO_HPP
#define GINSTAT_MONTE_CARLO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "ginstat/even_poly.hpp"

namespace ginstat {

/// Counter-based random stream: the state is derived by mixing a master seed
/// with a stream id (here the trial index), so trial t's sample is a pure
/// function of (seed, t) independent of worker assignment. Uniform output is
/// the splitmix64 sequence; normals come from Box-Muller.
class SplitStream {
public:
    SplitStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double uniform01();  // in (0, 1]
    double normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// N x N matrix of i.i.d. standard normals drawn from the stream in row-major
/// order.
Eigen::MatrixXd sample_ginibre(int N, SplitStream& stream);

/// Real eigenvalues of a real square matrix via the real Schur form: they are
/// exactly the 1x1 diagonal blocks (2x2 blocks carry the complex-conjugate
/// pairs), so no imaginary-part tolerance enters. Sorted ascending.
/// Throws NumericalError if the Schur iteration fails to converge.
std::vector<double> real_spectrum(const Eigen::MatrixXd& M);

/// Outcome of a single ensemble draw.
struct TrialResult {
    int n_real = 0;
    std::vector<double> real_eigenvalues;   // unscaled, ascending
    std::vector<double> statistic_values;   // sum P(lambda/sqrt(N)) per statistic
};

TrialResult run_trial(int N, std::uint64_t seed, std::uint64_t trial,
                      const std::vector<EvenPolynomial>& statistics);

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;           // unbiased sample variance
    double std_error_mean = 0.0;     // sample stddev / sqrt(trials)
    double std_error_variance = 0.0; // sqrt((m4 - m2^2)/trials)
    double m3 = 0.0;                 // central sample moments
    double m4 = 0.0;
};

struct EnsembleSummary {
    int N = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    MomentSummary n_real;
    double all_real_fraction = 0.0;
    double all_real_std_error = 0.0;
    std::uint64_t parity_violations = 0;  // trials with n_real != N (mod 2)
    std::vector<EvenPolynomial> statistics;
    std::vector<MomentSummary> stat_moments;
    Eigen::MatrixXd covariance;  // sample covariance among the statistics
    bool samples_retained = false;
    std::vector<std::vector<double>> samples;  // [statistic][trial]
    std::vector<double> n_real_samples;        // [trial]
};

struct EnsembleOptions {
    int workers = 0;          // 0: hardware concurrency
    int retain_samples = -1;  // -1 auto (trials <= 1e6), 0 off, 1 on
    /// invoked with (completed, total) as chunks finish; an exception thrown
    /// here aborts the run with PartialResultError
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Runs `trials` independent draws of the N x N ensemble and aggregates the
/// moments of N_R and of each requested linear statistic. The result is
/// bit-identical for a fixed (N, trials, statistics, seed) regardless of the
/// worker count: trials are chunked, each chunk is accumulated in trial
/// order, and chunk results are reduced in index order.
EnsembleSummary run_ensemble(int N, std::uint64_t trials,
                             const std::vector<EvenPolynomial>& statistics,
                             std::uint64_t seed, const EnsembleOptions& options = {});

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test of the samples against N(0, sigma2),
/// with the asymptotic p-value. Requires >= 100 samples.
KsResult clt_test(const std::vector<double>& samples, double sigma2);

/// CDF of the standard normal scaled to variance sigma2.
double normal_cdf(double x, double sigma2);

/// Kolmogorov distribution tail Q(t) = P(sup|B| > t).
double kolmogorov_q(double t);

}  // namespace ginstat

#endif
