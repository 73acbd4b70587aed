#include "spectral/exact.hpp"

#include <gmp.h>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectral {

Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    Integer r;
    mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(n));
    return r;
}

double to_double(const Integer& x) {
    if (mpz_sizeinbase(x.backend().data(), 2) <= 53) return mpz_get_d(x.backend().data());
    return to_double(Rational(x));
}

double to_double(const Rational& x) {
    // mpq_get_d truncates. Build a 55/56-bit quotient with a sticky bit and
    // let the uint64 -> double conversion do round-to-nearest-even.
    Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    if (num == 0) return 0.0;
    const bool negative = num < 0;
    if (negative) num = -num;
    const long shift = 55 + static_cast<long>(mpz_sizeinbase(den.backend().data(), 2)) -
                       static_cast<long>(mpz_sizeinbase(num.backend().data(), 2));
    Integer scaled = num;
    Integer divisor = den;
    if (shift >= 0)
        scaled <<= static_cast<unsigned>(shift);
    else
        divisor <<= static_cast<unsigned>(-shift);
    Integer q, r;
    boost::multiprecision::divide_qr(scaled, divisor, q, r);
    if (r != 0) q |= 1;
    const double mag = std::ldexp(static_cast<double>(q.convert_to<std::uint64_t>()), static_cast<int>(-shift));
    return negative ? -mag : mag;
}

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
    return Rational(x);
}

namespace {

// Base 10 only; the string constructor would read a leading 0 as octal.
Integer decimal_digits(std::string_view digits) {
    const auto nz = digits.find_first_not_of('0');
    return nz == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(nz)));
}

Integer parse_integer(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer literal");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw std::invalid_argument("malformed number: " + std::string(s));
    const Integer r = decimal_digits(s.substr(i));
    return s[0] == '-' ? Integer(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(text.substr(0, slash));
        const Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }
    // decimal literal with optional exponent, converted exactly
    std::string_view mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        const auto ex = text.substr(e + 1);
        const char* first = ex.data() + (!ex.empty() && ex[0] == '+' ? 1 : 0);
        auto [p, ec] = std::from_chars(first, ex.data() + ex.size(), exp10);
        if (ec != std::errc() || p != ex.data() + ex.size())
            throw std::invalid_argument("malformed exponent: " + std::string(text));
    }
    std::string digits;
    bool negative = false;
    std::size_t i = 0;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        negative = mant[0] == '-';
        i = 1;
    }
    bool seen_point = false;
    for (; i < mant.size(); ++i) {
        const char c = mant[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) --exp10;
        } else {
            throw std::invalid_argument("malformed number: " + std::string(text));
        }
    }
    if (digits.empty()) throw std::invalid_argument("malformed number: " + std::string(text));
    Rational r{decimal_digits(digits)};
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exp10)));
    r = exp10 >= 0 ? Rational(r * ten_pow) : Rational(r / ten_pow);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
    const Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

Integer floor(const Rational& x) {
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    Integer q;
    mpz_fdiv_q(q.backend().data(), num.backend().data(), den.backend().data());
    return q;
}

int compare(const Integer& a, double b) {
    if (!std::isfinite(b)) {
        if (std::isnan(b)) throw std::domain_error("comparison with NaN");
        return b > 0 ? -1 : 1;
    }
    const int c = mpz_cmp_d(a.backend().data(), b);
    return (c > 0) - (c < 0);
}

double PiPower::value() const {
    return to_double(coefficient) * std::pow(std::numbers::pi, 0.5 * half_pi_exponent);
}

PiPower pi_power(int half_pi_exponent) { return {Rational(1), half_pi_exponent}; }

bool is_half_integer_point(const Rational& x) {
    const Integer den = boost::multiprecision::denominator(x);
    return x > 0 && (den == 1 || den == 2);
}

PiPower gamma_exact(const Rational& x) {
    if (!is_half_integer_point(x))
        throw std::domain_error("exact Gamma needs a positive integer or half-integer, got " + to_string(x));
    if (boost::multiprecision::denominator(x) == 1) {
        const long n = boost::multiprecision::numerator(x).convert_to<long>();
        return {Rational(factorial(n - 1)), 0};
    }
    // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    const long n = floor(x).convert_to<long>();
    Rational c(factorial(2 * n), factorial(n));
    c /= Rational(boost::multiprecision::pow(Integer(4), static_cast<unsigned>(n)));
    return {c, 1};
}

}  // namespace spectral
