#include "doctest.h"

#include "spectral/exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace spectral;

TEST_CASE("binomial matches Pascal's triangle") {
    std::vector<std::vector<Integer>> row{{1}};
    for (long n = 1; n <= 40; ++n) {
        std::vector<Integer> next(n + 1, Integer(1));
        for (long k = 1; k < n; ++k) next[k] = row.back()[k - 1] + row.back()[k];
        row.push_back(next);
    }
    for (long n = 0; n <= 40; ++n)
        for (long k = 0; k <= n; ++k) CHECK(binomial(n, k) == row[n][k]);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(5, -1) == 0);
}

TEST_CASE("factorial") {
    Integer f = 1;
    for (long n = 1; n <= 30; ++n) {
        f *= n;
        CHECK(factorial(n) == f);
    }
    CHECK(factorial(0) == 1);
}

TEST_CASE("to_double rounds to nearest, ties to even") {
    const Integer two53 = Integer(1) << 53;
    CHECK(to_double(Integer(two53 + 1)) == std::ldexp(1.0, 53));
    CHECK(to_double(Integer(two53 + 3)) == std::ldexp(1.0, 53) + 4.0);
    CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
    CHECK(to_double(Rational(-2, 7)) == -2.0 / 7.0);
    const Integer big = boost::multiprecision::pow(Integer(10), 30);
    CHECK(to_double(Rational(big + 1, big)) == 1.0);
    // 1 + 2^-53 is a tie between 1 and 1 + 2^-52; even mantissa wins
    CHECK(to_double(Rational(two53 + 1, two53)) == 1.0);
    // just above the tie rounds up
    const Integer two62 = Integer(1) << 62;
    CHECK(to_double(Rational(two62 + 513, two62)) == 1.0 + std::numeric_limits<double>::epsilon());
}

TEST_CASE("exact_rational is lossless") {
    for (double x : {0.1, -3.75, 1e-300, 6.02e23}) CHECK(to_double(exact_rational(x)) == x);
    CHECK(exact_rational(0.5) == Rational(1, 2));
    CHECK_THROWS_AS(exact_rational(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("17") == Rational(17));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("007") == Rational(7));
    CHECK(parse_rational("0.0625") == Rational(1, 16));
    CHECK(parse_rational("08/09") == Rational(8, 9));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(to_string(parse_rational("10/4")) == "5/2");
}

TEST_CASE("floor and compare") {
    CHECK(spectral::floor(Rational(7, 2)) == 3);
    CHECK(spectral::floor(Rational(-7, 2)) == -4);
    CHECK(spectral::floor(Rational(4)) == 4);
    CHECK(compare(Integer(3), 2.999999) == 1);
    CHECK(compare(Integer(3), 3.0) == 0);
    CHECK(compare(Integer(3), 3.0000001) == -1);
    CHECK(compare(Integer(3), Rational(7, 2)) == -1);
    CHECK_THROWS(compare(Integer(1), std::nan("")));
}

TEST_CASE("gamma_exact agrees with tgamma") {
    for (int twice = 1; twice <= 60; ++twice) {
        const Rational x(twice, 2);
        const double expect = std::tgamma(twice / 2.0);
        CHECK(std::abs(gamma_exact(x).value() / expect - 1.0) < 1e-14);
    }
    CHECK(gamma_exact(Rational(1, 2)) == PiPower{Rational(1), 1});
    CHECK(gamma_exact(Rational(5)) == PiPower{Rational(24), 0});
    CHECK_THROWS_AS(gamma_exact(Rational(1, 3)), std::domain_error);
    CHECK_THROWS_AS(gamma_exact(Rational(0)), std::domain_error);
    CHECK(pi_power(2).value() == doctest::Approx(std::numbers::pi));
}
