#include "doctest.h"
#include "oracles.hpp"

#include "spectral/riesz.hpp"

#include <random>
#include <stdexcept>

using namespace spectral;

namespace {

std::vector<oracle::Level> oracle_levels(const Space& s, long l_max) {
    const int d = s.dim();
    switch (s.family()) {
        case Family::HemisphereDirichlet:
            return oracle::sphere_levels(d, 1, l_max, [d](long l) { return oracle::hemi_dirichlet_mult(d, l); });
        case Family::HemisphereNeumann:
            return oracle::sphere_levels(d, 0, l_max, [d](long l) { return oracle::hemi_neumann_mult(d, l); });
        default:
            return oracle::sphere_levels(d, 0, l_max, [d](long l) { return oracle::sphere_mult(d, l); });
    }
}

std::vector<Space> sphere_like(int d) {
    std::vector<Space> out{Space::sphere(d)};
    if (d >= 2) {
        out.push_back(Space::hemisphere_dirichlet(d));
        out.push_back(Space::hemisphere_neumann(d));
    }
    return out;
}

}  // namespace

TEST_CASE("counting function values") {
    CHECK(counting(SpectrumQuery(Space::sphere(2)), 6.0) == 9);
    CHECK(counting(SpectrumQuery(Space::hemisphere_dirichlet(2)), 2.0) == 1);
    CHECK(counting(SpectrumQuery(Space::hemisphere_neumann(2)), 2.0) == 3);
    CHECK(counting(SpectrumQuery(Space::sphere(3)), -1.0) == 0);
    CHECK(counting(SpectrumQuery(Space(Family::CayleyPlane, 16)), -1.0) == 0);
    CHECK(counting(SpectrumQuery(Space::hemisphere_dirichlet(4)), Rational(-1)) == 0);
}

TEST_CASE("Riesz means at tabulated points") {
    CHECK(riesz_mean(SpectrumQuery(Space::sphere(2)), 1, Rational(2)) == 2);
    CHECK(riesz_mean(SpectrumQuery(Space::sphere(3)), 1, Rational(3)) == 3);
    CHECK(riesz_mean(SpectrumQuery(Space::sphere(1)), 1, Rational(1)) == 1);
    CHECK(riesz_mean(SpectrumQuery(Space::sphere(2), 4), 1, Rational(81)) == 276);
    CHECK(riesz_mean(SpectrumQuery(Space::sphere(2)), 1, 2.0) == 2.0);
    CHECK(riesz_mean(SpectrumQuery(Space::sphere(2)), 2, Rational(0)) == 0);
    CHECK_THROWS(riesz_mean(SpectrumQuery(Space::sphere(2)), 3, 1.0));
}

TEST_CASE("brute force reports the cap and refuses to exceed it") {
    const auto r = riesz_mean_detailed(SpectrumQuery(Space::sphere(2)), 1, Rational(30), 50);
    CHECK(r.level_cap == 50);
    CHECK(r.levels_summed == 6);
    CHECK_THROWS_AS(riesz_mean_detailed(SpectrumQuery(Space::sphere(2)), 1, 1e6, 100), std::range_error);
}

TEST_CASE("Riesz means agree with an eigenvalue-by-eigenvalue sum") {
    std::mt19937_64 rng(20240611);
    for (int d = 1; d <= 5; ++d)
        for (const auto& s : sphere_like(d)) {
            CAPTURE(to_descriptor(s));
            const auto levels = oracle_levels(s, 14);
            const long top = 12 * (12 + d - 1);
            std::uniform_int_distribution<long> num(0, top * 7);
            for (int i = 0; i < 40; ++i) {
                const Rational z(num(rng), 7);
                for (int g = 0; g <= 2; ++g) {
                    const SpectrumQuery q(s);
                    const Rational exact = riesz_mean(q, g, z);
                    CHECK(exact == oracle::riesz_by_eigenvalue(levels, g, z));
                    const double fl = riesz_mean(q, g, to_double(z));
                    CHECK(oracle::rel_err(fl, to_double(exact)) <= 1e-12);
                }
            }
        }
}

TEST_CASE("polyharmonic spectra are powers of the Laplacian spectrum") {
    const auto levels = oracle_levels(Space::sphere(2), 80);
    for (int p = 1; p <= 4; ++p)
        for (long zi : {0L, 1L, 15L, 16L, 17L, 300L, 1296L, 5000L}) {
            const Rational z(zi);
            CHECK(riesz_mean(SpectrumQuery(Space::sphere(2), p), 1, z) == oracle::riesz_by_eigenvalue(levels, 1, z, p));
        }
}

TEST_CASE("closed forms equal brute force") {
    std::mt19937_64 rng(77);
    for (int d = 1; d <= 8; ++d) {
        const long top = 50L * (50 + d - 1);
        std::uniform_int_distribution<long> num(0, top * 13);
        for (int i = 0; i < 500; ++i) {
            const Rational z(num(rng), 13);
            const double zd = to_double(z);
            const SpectrumQuery sq(Space::sphere(d));
            CHECK(riesz1_closed_sphere(d, z) == riesz_mean(sq, 1, z));
            CHECK(oracle::rel_err(riesz1_closed_sphere(d, zd), to_double(riesz_mean(sq, 1, z))) <= 1e-12);
            if (d >= 2)
                for (const auto& h : {Space::hemisphere_dirichlet(d), Space::hemisphere_neumann(d)}) {
                    CHECK(counting_closed_hemisphere(h, z) == counting(SpectrumQuery(h), z));
                    CHECK(counting_closed_hemisphere(h, zd) == counting(SpectrumQuery(h), zd));
                }
        }
    }
    CHECK(riesz1_closed_sphere(2, 3.75) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(riesz1_closed_sphere(2, Rational(15, 4)) == 9);
    CHECK(riesz1_closed_sphere(3, Rational(3)) == 3);
    CHECK(riesz1_closed_sphere(2, Rational(0)) == 0);
    CHECK_THROWS_AS(counting_closed_hemisphere(Space::sphere(2), 1.0), std::invalid_argument);
}

TEST_CASE("Dirichlet and Neumann counting functions are related by a shift") {
    for (int d = 2; d <= 7; ++d) {
        const SpectrumQuery D(Space::hemisphere_dirichlet(d)), N(Space::hemisphere_neumann(d));
        for (double w : {1.0, 1.25, 2.0, 2.5, 3.9, 7.0, 10.5, 23.0}) {
            const auto z = [d](double x) { return Rational(exact_rational(x)) * (exact_rational(x) + d - 1); };
            const long fl = static_cast<long>(std::floor(w));
            const Integer nn = counting(N, z(w));
            CHECK(nn * fl == (fl + d) * counting(D, z(w)));
            CHECK(nn == counting(D, z(w + 1)));
        }
    }
}

TEST_CASE("monotone, convex, and continuously differentiable in the right places") {
    const SpectrumQuery q(Space::sphere(3));
    Rational prev0 = -1, prev1 = -1, prev2 = -1;
    for (long i = 0; i <= 400; ++i) {
        const Rational z(i, 5);
        const Rational r0 = riesz_mean(q, 0, z), r1 = riesz_mean(q, 1, z), r2 = riesz_mean(q, 2, z);
        CHECK(r0 >= prev0);
        CHECK(r1 >= prev1);
        CHECK(r2 >= prev2);
        prev0 = r0, prev1 = r1, prev2 = r2;
    }
    // R_1 is convex: midpoint below the chord
    for (long i = 1; i < 300; ++i) {
        const Rational a(i, 3), b(i + 5, 3);
        CHECK(riesz_mean(q, 1, Rational((a + b) / 2)) * 2 <= riesz_mean(q, 1, a) + riesz_mean(q, 1, b));
    }
    // R_2 has matching one-sided slopes at every level
    const Rational h(1, 10'000'000'000LL);
    for (long l = 1; l <= 12; ++l) {
        const Rational lam(l * (l + 2));
        const Rational right = (riesz_mean(q, 2, Rational(lam + h)) - riesz_mean(q, 2, lam)) / h;
        const Rational left = (riesz_mean(q, 2, lam) - riesz_mean(q, 2, Rational(lam - h))) / h;
        CHECK(to_double(abs(right - left) / right) < 1e-9);
    }
}

TEST_CASE("R_2 differentiates to 2 R_1") {
    for (int d : {1, 2, 5}) {
        const SpectrumQuery q(Space::sphere(d));
        for (double z : {0.5, 3.3, 17.7, 101.1, 555.5}) {
            const double h = 1e-4;
            const double deriv = (riesz_mean(q, 2, z + h) - riesz_mean(q, 2, z - h)) / (2 * h);
            CHECK(oracle::rel_err(deriv, 2 * riesz_mean(q, 1, z)) < 1e-6);
        }
    }
}

TEST_CASE("buckling drops the zero eigenvalue") {
    const SpectrumQuery std_q(Space::sphere(2)), buck(Space::sphere(2), 1, Variant::Buckling);
    for (double z : {0.0, 1.0, 2.0, 5.0, 6.0, 100.0}) CHECK(counting(buck, z) == counting(std_q, z) - 1);
    CHECK(riesz_mean(buck, 1, Rational(6)) == riesz_mean(std_q, 1, Rational(6)) - 6);
    CHECK_THROWS_AS(SpectrumQuery(Space::hemisphere_dirichlet(2), 1, Variant::Buckling), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumQuery(Space::sphere(2), 0), std::invalid_argument);
}

TEST_CASE("lemma_sum skips the constant mode") {
    CHECK(lemma_sum(1, Rational(2)) == 0);
    CHECK(lemma_sum(1, Rational(6)) == 12);
    CHECK(lemma_sum(4, Rational(81)) == 195);
    CHECK(lemma_sum(4, 81.0) == 195.0);
    for (int p = 1; p <= 4; ++p)
        for (long z : {0L, 3L, 40L, 999L})
            CHECK(lemma_sum(p, Rational(z)) == riesz_mean(SpectrumQuery(Space::sphere(2), p), 1, Rational(z)) - z);
    CHECK_THROWS(lemma_sum(0, 1.0));
}

TEST_CASE("polyharmonic integral transforms") {
    const auto a = poly_transform_check(2, 2, Rational(2));
    CHECK(a.lhs == 4);
    CHECK(a.rhs_riesz == 4);
    CHECK(a.rhs_counting == 4);
    CHECK(a.residual == 0.0);
    const auto b = poly_transform_check(3, 2, Rational(0));
    CHECK(b.lhs == 0);
    CHECK(b.residual == 0.0);
    const auto c = poly_transform_check(2, 3, 6.0);
    CHECK(c.residual <= 1e-10);
    const auto levels = oracle_levels(Space::sphere(2), 10);
    CHECK(c.lhs == doctest::Approx(to_double(oracle::riesz_by_eigenvalue(levels, 1, Rational(216), 3))));
    for (int d = 1; d <= 4; ++d)
        for (int p = 2; p <= 5; ++p)
            for (long zi : {1L, 7L, 30L, 91L}) {
                const auto e = poly_transform_check(d, p, Rational(zi, 3));
                CHECK(e.lhs == e.rhs_riesz);
                CHECK(e.lhs == e.rhs_counting);
                CHECK(poly_transform_check(d, p, zi / 3.0).residual <= 1e-10);
            }
    CHECK_THROWS(poly_transform_check(2, 1, 1.0));
}

TEST_CASE("eigenvalue averages") {
    CHECK(eigenvalue_average(SpectrumQuery(Space::sphere(2)), 1) == 0);
    CHECK(eigenvalue_average(SpectrumQuery(Space::sphere(2)), 4) == Rational(3, 2));
    CHECK(eigenvalue_average(SpectrumQuery(Space::sphere(3)), 5) == Rational(12, 5));
    CHECK_THROWS(eigenvalue_average(SpectrumQuery(Space::sphere(2)), 0));

    // against the flattened list
    for (const auto& s : {Space::sphere(2), Space::hemisphere_dirichlet(3), Space::sphere(4)}) {
        std::vector<Integer> flat;
        for (const auto& lv : oracle_levels(s, 20))
            for (long j = 0; j < static_cast<long>(lv.mult); ++j) flat.push_back(lv.lambda);
        Integer s1 = 0, s2 = 0;
        for (long k = 1; k <= 400; ++k) {
            s1 += flat[k - 1];
            s2 += flat[k - 1] * flat[k - 1];
            const auto ps = prefix_sums(SpectrumQuery(s), k);
            CHECK(ps.sum1 == s1);
            CHECK(ps.sum2 == s2);
        }
    }
}
