#ifndef GINSTAT_ERRORS_HPP
#define GINSTAT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ginstat {

/// Adaptive quadrature failed to reach the requested tolerance.
/// Carries the best estimate and its error bound so callers can decide
/// whether the partial answer is still usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}
    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// A request exceeded the configured compute budget (expansion degree,
/// index-sum size, ...).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix inversion hit a (numerically) singular input.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, double z)
        : std::runtime_error(what), z_(z) {}
    double corner_parameter() const noexcept { return z_; }

private:
    double z_;
};

/// Iterative numerical routine (Schur decomposition, ...) did not converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An ensemble run aborted before all trials completed.
class PartialResultError : public std::runtime_error {
public:
    PartialResultError(const std::string& what, std::uint64_t completed_trials)
        : std::runtime_error(what), completed_(completed_trials) {}
    std::uint64_t completed_trials() const noexcept { return completed_; }

private:
    std::uint64_t completed_;
};

/// Too few samples for a statistical test.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ginstat

#endif
