#ifndef GINSTAT_EVEN_POLY_HPP
#define GINSTAT_EVEN_POLY_HPP

#include <map>
#include <string>
#include <string_view>

namespace ginstat {

/// Real polynomial with even-degree terms only, P(-x) = P(x).
/// These are the admissible test functions of the real-eigenvalue linear
/// statistics; odd degrees are rejected at construction time.
class EvenPolynomial {
public:
    EvenPolynomial() = default;  // zero polynomial

    static EvenPolynomial constant(double c);
    static EvenPolynomial monomial(int degree, double coefficient = 1.0);

    /// Parse the statistic micro-syntax: "1", "x2", "x2+0.5x4", "2-0.25x6".
    /// Throws std::invalid_argument on malformed input or odd powers.
    static EvenPolynomial parse(std::string_view spec);

    void set_coefficient(int degree, double c);
    double coefficient(int degree) const;
    const std::map<int, double>& coefficients() const { return coeffs_; }

    int max_degree() const;
    bool is_zero() const { return coeffs_.empty(); }

    double operator()(double x) const;

    EvenPolynomial operator+(const EvenPolynomial& o) const;
    EvenPolynomial operator*(const EvenPolynomial& o) const;
    EvenPolynomial operator*(double c) const;
    EvenPolynomial pow(int k) const;

    /// Coefficients of P(x / sqrt(N)): degree-p coefficient picks up N^{-p/2}.
    EvenPolynomial scaled_by_inv_sqrt(double N) const;

    /// Canonical round-trippable form of the micro-syntax.
    std::string to_string() const;

    bool operator==(const EvenPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::map<int, double> coeffs_;  // degree -> coefficient, zeros dropped
};

}  // namespace ginstat

#endif
