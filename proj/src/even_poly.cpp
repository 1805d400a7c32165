#include "ginstat/even_poly.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ginstat {

namespace {

void require_even(int degree) {
    if (degree < 0 || degree % 2 != 0)
        throw std::invalid_argument("even polynomial: degree must be even and >= 0, got " +
                                    std::to_string(degree));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // try shorter forms that still round-trip
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v) return probe;
    }
    return buf;
}

}  // namespace

EvenPolynomial EvenPolynomial::constant(double c) {
    EvenPolynomial p;
    p.set_coefficient(0, c);
    return p;
}

EvenPolynomial EvenPolynomial::monomial(int degree, double coefficient) {
    EvenPolynomial p;
    require_even(degree);
    p.set_coefficient(degree, coefficient);
    return p;
}

void EvenPolynomial::set_coefficient(int degree, double c) {
    require_even(degree);
    if (c == 0.0)
        coeffs_.erase(degree);
    else
        coeffs_[degree] = c;
}

double EvenPolynomial::coefficient(int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? 0.0 : it->second;
}

int EvenPolynomial::max_degree() const {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

double EvenPolynomial::operator()(double x) const {
    // Horner in x^2 over the dense even range
    const double x2 = x * x;
    double acc = 0.0;
    int deg = max_degree();
    for (int d = deg; d >= 0; d -= 2) acc = acc * x2 + coefficient(d);
    return acc;
}

EvenPolynomial EvenPolynomial::operator+(const EvenPolynomial& o) const {
    EvenPolynomial r = *this;
    for (const auto& [d, c] : o.coeffs_) r.set_coefficient(d, r.coefficient(d) + c);
    return r;
}

EvenPolynomial EvenPolynomial::operator*(const EvenPolynomial& o) const {
    EvenPolynomial r;
    for (const auto& [d1, c1] : coeffs_)
        for (const auto& [d2, c2] : o.coeffs_)
            r.set_coefficient(d1 + d2, r.coefficient(d1 + d2) + c1 * c2);
    return r;
}

EvenPolynomial EvenPolynomial::operator*(double c) const {
    EvenPolynomial r;
    if (c != 0.0)
        for (const auto& [d, v] : coeffs_) r.set_coefficient(d, v * c);
    return r;
}

EvenPolynomial EvenPolynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("EvenPolynomial::pow: negative exponent");
    EvenPolynomial r = constant(1.0);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
}

EvenPolynomial EvenPolynomial::scaled_by_inv_sqrt(double N) const {
    if (!(N > 0)) throw std::invalid_argument("scaled_by_inv_sqrt: N must be positive");
    EvenPolynomial r;
    for (const auto& [d, c] : coeffs_)
        r.set_coefficient(d, c * std::pow(N, -0.5 * d));
    return r;
}

EvenPolynomial EvenPolynomial::parse(std::string_view spec) {
    EvenPolynomial p;
    std::size_t i = 0;
    if (spec.empty()) throw std::invalid_argument("statistic spec: empty string");
    bool any_term = false;
    while (i < spec.size()) {
        double sign = 1.0;
        if (spec[i] == '+' || spec[i] == '-') {
            if (spec[i] == '-') sign = -1.0;
            ++i;
            if (i >= spec.size())
                throw std::invalid_argument("statistic spec: dangling sign in '" +
                                            std::string(spec) + "'");
        }
        double coeff = 1.0;
        bool have_number = false;
        if (spec[i] != 'x') {
            const char* begin = spec.data() + i;
            const char* end = spec.data() + spec.size();
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc() || ptr == begin)
                throw std::invalid_argument("statistic spec: expected number at '" +
                                            std::string(spec.substr(i)) + "'");
            coeff = v;
            have_number = true;
            i += static_cast<std::size_t>(ptr - begin);
        }
        int degree = 0;
        if (i < spec.size() && spec[i] == 'x') {
            ++i;
            degree = 1;  // bare 'x' is degree 1 and will be rejected below
            if (i < spec.size() && spec[i] >= '0' && spec[i] <= '9') {
                const char* begin = spec.data() + i;
                const char* end = spec.data() + spec.size();
                int d = 0;
                auto [ptr, ec] = std::from_chars(begin, end, d);
                if (ec != std::errc())
                    throw std::invalid_argument("statistic spec: bad power in '" +
                                                std::string(spec) + "'");
                degree = d;
                i += static_cast<std::size_t>(ptr - begin);
            }
        } else if (!have_number) {
            throw std::invalid_argument("statistic spec: expected term at '" +
                                        std::string(spec.substr(i)) + "'");
        }
        if (degree % 2 != 0)
            throw std::invalid_argument("statistic spec: odd power x" +
                                        std::to_string(degree) +
                                        " not allowed (even statistics only)");
        p.set_coefficient(degree, p.coefficient(degree) + sign * coeff);
        any_term = true;
        if (i < spec.size() && spec[i] != '+' && spec[i] != '-')
            throw std::invalid_argument("statistic spec: unexpected character '" +
                                        std::string(1, spec[i]) + "' in '" +
                                        std::string(spec) + "'");
    }
    if (!any_term) throw std::invalid_argument("statistic spec: no terms");
    return p;
}

std::string EvenPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, c] : coeffs_) {
        double v = c;
        if (first) {
            if (v < 0) {
                out += '-';
                v = -v;
            }
        } else {
            out += (v < 0) ? '-' : '+';
            if (v < 0) v = -v;
        }
        if (d == 0) {
            out += format_double(v);
        } else {
            if (v != 1.0) out += format_double(v);
            out += 'x';
            out += std::to_string(d);
        }
        first = false;
    }
    return out;
}

}  // namespace ginstat
