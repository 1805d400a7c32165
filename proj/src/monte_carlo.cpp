#include "ginstat/monte_carlo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ginstat/errors.hpp"

namespace ginstat {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

SplitStream::SplitStream(std::uint64_t seed, std::uint64_t stream_id) {
    state_ = mix64(mix64(seed + kGolden * (stream_id + 1)) ^ 0xD1B54A32D192ED03ULL);
}

std::uint64_t SplitStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double SplitStream::uniform01() {
    // 53-bit mantissa shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double SplitStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Eigen::MatrixXd sample_ginibre(int N, SplitStream& stream) {
    if (N < 1) throw std::domain_error("sample_ginibre: N must be >= 1");
    Eigen::MatrixXd G(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) G(i, j) = stream.normal();
    return G;
}

std::vector<double> real_spectrum(const Eigen::MatrixXd& M) {
    const int N = static_cast<int>(M.rows());
    if (M.cols() != N) throw std::domain_error("real_spectrum: matrix must be square");
    if (!M.allFinite()) throw std::domain_error("real_spectrum: non-finite entries");
    if (N == 0) return {};
    Eigen::RealSchur<Eigen::MatrixXd> schur(M, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw NumericalError("real_spectrum: Schur iteration did not converge (norm " +
                             std::to_string(M.norm()) + ", size " + std::to_string(N) +
                             ")");
    const Eigen::MatrixXd& T = schur.matrixT();
    std::vector<double> eigs;
    eigs.reserve(static_cast<std::size_t>(N));
    int i = 0;
    while (i < N) {
        if (i == N - 1 || T(i + 1, i) == 0.0) {
            eigs.push_back(T(i, i));  // 1x1 block: real eigenvalue
            i += 1;
        } else {
            i += 2;  // 2x2 block: complex conjugate pair
        }
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

TrialResult run_trial(int N, std::uint64_t seed, std::uint64_t trial,
                      const std::vector<EvenPolynomial>& statistics) {
    SplitStream stream(seed, trial);
    const Eigen::MatrixXd G = sample_ginibre(N, stream);
    TrialResult result;
    result.real_eigenvalues = real_spectrum(G);
    result.n_real = static_cast<int>(result.real_eigenvalues.size());
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(N));
    result.statistic_values.resize(statistics.size(), 0.0);
    for (std::size_t s = 0; s < statistics.size(); ++s) {
        double acc = 0.0;
        for (double lambda : result.real_eigenvalues)
            acc += statistics[s](lambda * inv_sqrt_n);
        result.statistic_values[s] = acc;
    }
    return result;
}

namespace {

constexpr std::uint64_t kChunk = 512;

struct ChunkSums {
    // shifted power sums per statistic: sum (x-K)^p, p = 1..4
    std::vector<double> pow_sums;
    // shifted cross sums per (i<j) pair
    std::vector<double> cross_sums;
    double nr_pow[4] = {0, 0, 0, 0};
    std::uint64_t all_real = 0;
    std::uint64_t parity_violations = 0;
};

struct Accumulated {
    std::vector<double> pow_sums, cross_sums;
    double nr_pow[4] = {0, 0, 0, 0};
    std::uint64_t all_real = 0;
    std::uint64_t parity_violations = 0;
};

// Kahan merge of chunk sums in fixed chunk order.
void kahan_add(double& sum, double& comp, double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

MomentSummary finalize_moments(double s1, double s2, double s3, double s4, double shift,
                               std::uint64_t trials) {
    MomentSummary m;
    const double T = static_cast<double>(trials);
    const double d = s1 / T;
    m.mean = shift + d;
    const double m2 = s2 / T - d * d;
    m.m3 = s3 / T - 3.0 * d * s2 / T + 2.0 * d * d * d;
    m.m4 = s4 / T - 4.0 * d * s3 / T + 6.0 * d * d * s2 / T - 3.0 * d * d * d * d;
    m.variance = trials > 1 ? m2 * T / (T - 1.0) : 0.0;
    m.std_error_mean = trials > 0 ? std::sqrt(std::max(0.0, m.variance) / T) : 0.0;
    m.std_error_variance =
        trials > 0 ? std::sqrt(std::max(0.0, m.m4 - m2 * m2) / T) : 0.0;
    return m;
}

}  // namespace

EnsembleSummary run_ensemble(int N, std::uint64_t trials,
                             const std::vector<EvenPolynomial>& statistics,
                             std::uint64_t seed, const EnsembleOptions& options) {
    if (N < 2 || N % 2 != 0)
        throw std::invalid_argument("run_ensemble: N must be even and >= 2");
    if (trials < 1) throw std::invalid_argument("run_ensemble: trials must be >= 1");
    const std::size_t S = statistics.size();
    const std::size_t n_cross = S * (S - 1) / 2;

    const bool retain = options.retain_samples == 1 ||
                        (options.retain_samples < 0 && trials <= 1000000ULL);

    int workers = options.workers;
    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    const std::uint64_t n_chunks = (trials + kChunk - 1) / kChunk;
    workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_chunks));

    // deterministic shifts for the one-pass central sums, from trial 0
    const TrialResult first = run_trial(N, seed, 0, statistics);
    const double nr_shift = static_cast<double>(first.n_real);
    std::vector<double> stat_shift = first.statistic_values;

    std::vector<ChunkSums> chunks(n_chunks);
    EnsembleSummary summary;
    if (retain) {
        summary.samples.assign(S, std::vector<double>(trials, 0.0));
        summary.n_real_samples.assign(trials, 0.0);
    }

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> completed{0};
    std::atomic<bool> abort{false};
    std::mutex progress_mutex;
    std::exception_ptr worker_error;
    std::mutex error_mutex;

    auto worker_fn = [&]() {
        std::vector<double> values(S);
        while (!abort.load(std::memory_order_relaxed)) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t begin = c * kChunk;
            const std::uint64_t end = std::min(trials, begin + kChunk);
            ChunkSums& sums = chunks[c];
            sums.pow_sums.assign(4 * S, 0.0);
            sums.cross_sums.assign(n_cross, 0.0);
            try {
                for (std::uint64_t t = begin; t < end; ++t) {
                    const TrialResult trial = run_trial(N, seed, t, statistics);
                    const double nr = static_cast<double>(trial.n_real);
                    if ((trial.n_real - N) % 2 != 0) ++sums.parity_violations;
                    if (trial.n_real == N) ++sums.all_real;
                    const double dn = nr - nr_shift;
                    double acc = dn;
                    for (int p = 0; p < 4; ++p) {
                        sums.nr_pow[p] += acc;
                        acc *= dn;
                    }
                    for (std::size_t si = 0; si < S; ++si) {
                        const double dx = trial.statistic_values[si] - stat_shift[si];
                        values[si] = dx;
                        double a = dx;
                        for (int p = 0; p < 4; ++p) {
                            sums.pow_sums[4 * si + p] += a;
                            a *= dx;
                        }
                    }
                    std::size_t cx = 0;
                    for (std::size_t i = 0; i < S; ++i)
                        for (std::size_t j = i + 1; j < S; ++j)
                            sums.cross_sums[cx++] += values[i] * values[j];
                    if (retain) {
                        summary.n_real_samples[t] = nr;
                        for (std::size_t si = 0; si < S; ++si)
                            summary.samples[si][t] = trial.statistic_values[si];
                    }
                }
                const std::uint64_t done = completed.fetch_add(end - begin) + (end - begin);
                if (options.progress) {
                    std::lock_guard<std::mutex> lock(progress_mutex);
                    options.progress(done, trials);
                }
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!worker_error) worker_error = std::current_exception();
                }
                abort.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    if (workers == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }

    if (worker_error) {
        std::string reason;
        try {
            std::rethrow_exception(worker_error);
        } catch (const std::exception& e) {
            reason = e.what();
        }
        throw PartialResultError("run_ensemble: worker failed after " +
                                     std::to_string(completed.load()) +
                                     " completed trials: " + reason,
                                 completed.load());
    }

    // order-fixed merge
    Accumulated total;
    total.pow_sums.assign(4 * S, 0.0);
    total.cross_sums.assign(n_cross, 0.0);
    std::vector<double> comp_pow(4 * S, 0.0), comp_cross(n_cross, 0.0);
    double comp_nr[4] = {0, 0, 0, 0};
    for (const ChunkSums& c : chunks) {
        for (int p = 0; p < 4; ++p) kahan_add(total.nr_pow[p], comp_nr[p], c.nr_pow[p]);
        for (std::size_t i = 0; i < 4 * S; ++i)
            kahan_add(total.pow_sums[i], comp_pow[i], c.pow_sums[i]);
        for (std::size_t i = 0; i < n_cross; ++i)
            kahan_add(total.cross_sums[i], comp_cross[i], c.cross_sums[i]);
        total.all_real += c.all_real;
        total.parity_violations += c.parity_violations;
    }

    summary.N = N;
    summary.trials = trials;
    summary.seed = seed;
    summary.statistics = statistics;
    summary.samples_retained = retain;
    summary.n_real = finalize_moments(total.nr_pow[0], total.nr_pow[1], total.nr_pow[2],
                                      total.nr_pow[3], nr_shift, trials);
    summary.all_real_fraction = static_cast<double>(total.all_real) / trials;
    summary.all_real_std_error = std::sqrt(std::max(
        0.0, summary.all_real_fraction * (1.0 - summary.all_real_fraction) / trials));
    summary.parity_violations = total.parity_violations;
    summary.stat_moments.resize(S);
    for (std::size_t si = 0; si < S; ++si)
        summary.stat_moments[si] =
            finalize_moments(total.pow_sums[4 * si], total.pow_sums[4 * si + 1],
                             total.pow_sums[4 * si + 2], total.pow_sums[4 * si + 3],
                             stat_shift[si], trials);
    summary.covariance = Eigen::MatrixXd::Zero(static_cast<int>(S), static_cast<int>(S));
    const double T = static_cast<double>(trials);
    std::size_t cx = 0;
    for (std::size_t i = 0; i < S; ++i) {
        summary.covariance(static_cast<int>(i), static_cast<int>(i)) =
            summary.stat_moments[i].variance;
        for (std::size_t j = i + 1; j < S; ++j) {
            const double di = total.pow_sums[4 * i] / T;
            const double dj = total.pow_sums[4 * j] / T;
            const double cov =
                (total.cross_sums[cx] / T - di * dj) * (trials > 1 ? T / (T - 1.0) : 1.0);
            summary.covariance(static_cast<int>(i), static_cast<int>(j)) = cov;
            summary.covariance(static_cast<int>(j), static_cast<int>(i)) = cov;
            ++cx;
        }
    }
    return summary;
}

double normal_cdf(double x, double sigma2) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * sigma2));
}

double kolmogorov_q(double t) {
    if (t <= 0.0) return 1.0;
    if (t < 1.18) {
        // theta-function form of the CDF, fast for small t
        const double v = M_PI * M_PI / (8.0 * t * t);
        double cdf = 0.0;
        for (int k = 1; k <= 19; k += 2) cdf += std::exp(-v * k * k);
        cdf *= std::sqrt(2.0 * M_PI) / t;
        return std::min(1.0, std::max(0.0, 1.0 - cdf));
    }
    double q = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        q += (k % 2 == 1) ? 2.0 * term : -2.0 * term;
        if (term < 1e-18) break;
    }
    return std::min(1.0, std::max(0.0, q));
}

KsResult clt_test(const std::vector<double>& samples, double sigma2) {
    if (samples.size() < 100)
        throw InsufficientDataError("clt_test: need at least 100 samples, got " +
                                    std::to_string(samples.size()));
    if (!(sigma2 > 0.0)) throw std::domain_error("clt_test: sigma2 must be positive");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = normal_cdf(sorted[i], sigma2);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::fabs(cdf - lo), std::fabs(cdf - hi)));
    }
    KsResult result;
    result.statistic = d;
    result.p_value = kolmogorov_q(std::sqrt(n) * d);
    return result;
}

}  // namespace ginstat
