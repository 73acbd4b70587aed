#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <string>
#include <string_view>

namespace spectral {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Scalars accepted by the dual evaluation paths: binary64 or exact rational.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

Integer binomial(long n, long k);
Integer factorial(long n);

double to_double(const Integer& x);
double to_double(const Rational& x);
inline double to_double(double x) { return x; }

Rational exact_rational(double x);
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Integer floor(const Rational& x);

// Three-way comparison of an integer with a finite double, exact.
int compare(const Integer& a, double b);
inline int compare(const Integer& a, const Rational& b) {
    const Rational ra(a);
    return ra < b ? -1 : (ra > b ? 1 : 0);
}

template <Scalar T>
T from_integer(const Integer& x) {
    if constexpr (std::same_as<T, double>)
        return to_double(x);
    else
        return Rational(x);
}

// coefficient * pi^(half_pi_exponent / 2). Carries Gamma values at integer
// and half-integer points, volumes of spheres and the semiclassical constants
// without rounding.
struct PiPower {
    Rational coefficient{1};
    int half_pi_exponent = 0;

    double value() const;
    bool is_rational() const { return half_pi_exponent == 0 || coefficient == 0; }

    friend PiPower operator*(const PiPower& a, const PiPower& b) {
        return {a.coefficient * b.coefficient, a.half_pi_exponent + b.half_pi_exponent};
    }
    friend PiPower operator/(const PiPower& a, const PiPower& b) {
        return {a.coefficient / b.coefficient, a.half_pi_exponent - b.half_pi_exponent};
    }
    friend bool operator==(const PiPower& a, const PiPower& b) {
        if (a.coefficient == 0 || b.coefficient == 0) return a.coefficient == b.coefficient;
        return a.coefficient == b.coefficient && a.half_pi_exponent == b.half_pi_exponent;
    }
};

PiPower pi_power(int half_pi_exponent);

// Gamma(x) for x = n or x = n + 1/2 with n >= 0 (x > 0); throws otherwise.
PiPower gamma_exact(const Rational& x);
bool is_half_integer_point(const Rational& x);

}  // namespace spectral
