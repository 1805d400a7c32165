#ifndef GINSTAT_LOG_SCALED_HPP
#define GINSTAT_LOG_SCALED_HPP

#include <cmath>
#include <limits>

namespace ginstat {

/// Signed log-magnitude representation of a real number.
///
/// Gamma-function products in this library overflow double precision long
/// before the final normalized quantities do, so intermediate values are kept
/// as (sign, log|value|) pairs and exponentiated only after all large factors
/// have cancelled. sign == 0 encodes an exact zero; log_magnitude is then
/// ignored.
struct LogScaledReal {
    int sign = 0;
    double log_magnitude = -std::numeric_limits<double>::infinity();

    static LogScaledReal zero() { return {}; }

    static LogScaledReal from_log(int sign, double log_magnitude) {
        if (sign == 0) return zero();
        return {sign > 0 ? 1 : -1, log_magnitude};
    }

    static LogScaledReal from_value(double v) {
        if (v == 0.0) return zero();
        return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }

    double value() const {
        return sign == 0 ? 0.0 : sign * std::exp(log_magnitude);
    }

    /// sign * exp(log_magnitude - log_offset); the caller supplies the log of
    /// a positive normalization constant.
    double value_scaled(double log_offset) const {
        return sign == 0 ? 0.0 : sign * std::exp(log_magnitude - log_offset);
    }

    bool is_zero() const { return sign == 0; }

    friend LogScaledReal operator*(const LogScaledReal& a, const LogScaledReal& b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
    }

    friend LogScaledReal operator+(const LogScaledReal& a, const LogScaledReal& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const LogScaledReal& hi = a.log_magnitude >= b.log_magnitude ? a : b;
        const LogScaledReal& lo = a.log_magnitude >= b.log_magnitude ? b : a;
        const double d = std::exp(lo.log_magnitude - hi.log_magnitude);
        if (hi.sign == lo.sign)
            return {hi.sign, hi.log_magnitude + std::log1p(d)};
        if (d == 1.0) return zero();
        return {hi.sign, hi.log_magnitude + std::log1p(-d)};
    }
};

/// Streaming log-sum-exp accumulator for sums of positive terms given by
/// their logarithms.
class LogSumAccumulator {
public:
    void add_log_term(double log_term) {
        if (count_ == 0) {
            max_ = log_term;
            sum_ = 1.0;
        } else if (log_term <= max_) {
            sum_ += std::exp(log_term - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
        ++count_;
    }

    bool empty() const { return count_ == 0; }

    double log_sum() const {
        return empty() ? -std::numeric_limits<double>::infinity()
                       : max_ + std::log(sum_);
    }

private:
    double max_ = 0.0;
    double sum_ = 0.0;
    std::size_t count_ = 0;
};

}  // namespace ginstat

#endif
