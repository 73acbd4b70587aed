#include "doctest.h"
#include "oracles.hpp"

#include "spectral/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace spectral;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<oracle::Level> sphere2(long l_max) {
    return oracle::sphere_levels(2, 0, l_max, [](long l) { return Integer(2 * l + 1); });
}

BoundParams dim(int d) {
    BoundParams p;
    p.d = d;
    return p;
}

}  // namespace

TEST_CASE("bound values at tabulated points") {
    CHECK(bound_value("sd.r1.upper.shift", dim(2), 2.0) == doctest::Approx(3.125));
    CHECK(bound_value("hemi2.r1d.lower", {}, 2.0) == doctest::Approx(0.0));
    BoundParams half;
    half.area = 2 * pi;
    CHECK(bound_value("dom.s2p.bly", half, 4.0) == doctest::Approx(4.0));
    CHECK(bound_value("sd.avg.twosided", dim(2), 1.0, Side::Lower) == doctest::Approx(0.0));
    CHECK(bound_value("s2.r1.lower", {}, 6.0) == doctest::Approx(18.0));
    CHECK(bound_value("s2.r1.upper", {}, 6.0) == doctest::Approx(0.5 * 6.5 * 6.5));
    CHECK(bound_value("s1.r1.upper.shift", {}, 1.0) == doctest::Approx(4.0 / 3 * std::pow(1 + 1.0 / 12, 1.5)));
    CHECK(bound_value("hemi2.nd.polya", {}, 5.0) == doctest::Approx(2.5));
}

TEST_CASE("exact bound values where the form is rational") {
    const auto v = bound_value_exact("s2.r1.lower", {}, Rational(6));
    REQUIRE(v.has_value());
    CHECK(*v == 18);
    const auto u = bound_value_exact("sd.r1.upper.shift", dim(2), Rational(2));
    REQUIRE(u.has_value());
    CHECK(*u == Rational(25, 8));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(bound_value("no.such.bound", {}, 1.0));
    CHECK_THROWS(bound_value("hemi.d.bly345", dim(6), 10.0));
    CHECK_NOTHROW(bound_value("hemi.d.bly345", dim(5), 10.0));
    BoundParams too_big;
    too_big.area = 2 * pi + 1;
    CHECK_THROWS(bound_value("dom.s2p.bly", too_big, 1.0));
    BoundParams negative;
    negative.area = -1;
    CHECK_THROWS(bound_value("dom.s2p.bly", negative, 1.0));
    CHECK(&find_bound("fail.hemi.polya.d≥3") == &find_bound("fail.hemi.polya.d>=3"));
}

TEST_CASE("sphere R_1 sits between the two quadratic bounds") {
    const auto lv = sphere2(40);
    for (long i = 0; i <= 1500; ++i) {
        const Rational z(i, 4);
        const double r = to_double(oracle::riesz_by_eigenvalue(lv, 1, z));
        const double zd = to_double(z);
        CHECK(r >= bound_value("s2.r1.lower", {}, zd) - 1e-9);
        CHECK(r <= bound_value("s2.r1.upper", {}, zd) + 1e-9);
        CHECK(r >= bound_value("s2.r1.lower.imp", {}, zd) - 1e-9);
        CHECK(r <= bound_value("s2.r1.upper.imp", {}, zd) + 1e-9);
    }
}

TEST_CASE("hemisphere counting and Riesz bounds against the parity oracle") {
    const auto D = oracle::sphere_levels(2, 1, 40, [](long l) { return Integer(l); });
    const auto N = oracle::sphere_levels(2, 0, 40, [](long l) { return Integer(l + 1); });
    for (long i = 1; i <= 1500; ++i) {
        const Rational z(i, 4);
        const double zd = to_double(z);
        const double nd = to_double(oracle::riesz_by_eigenvalue(D, 0, z));
        const double rd = to_double(oracle::riesz_by_eigenvalue(D, 1, z));
        const double rn = to_double(oracle::riesz_by_eigenvalue(N, 1, z));
        CHECK(nd <= bound_value("hemi2.nd.polya", {}, zd) + 1e-9);
        CHECK(nd <= bound_value("hemi2.nd.twosided", {}, zd, Side::Upper) + 1e-9);
        CHECK(nd >= bound_value("hemi2.nd.twosided", {}, zd, Side::Lower) - 1e-9);
        CHECK(rd >= bound_value("hemi2.r1d.lower", {}, zd) - 1e-9);
        CHECK(rd <= bound_value("hemi2.r1d.upper", {}, zd) + 1e-9);
        CHECK(rn >= bound_value("hemi2.r1n.lower", {}, zd) - 1e-9);
        CHECK(rn <= bound_value("hemi2.r1n.upper", {}, zd) + 1e-9);
        BoundParams whole;
        whole.area = 2 * pi;
        CHECK(rd <= bound_value("dom.s2p.bly", whole, zd) + 1e-9);
    }
}

TEST_CASE("polyharmonic bounds on S^2") {
    const auto lv = sphere2(40);
    for (int p = 2; p <= 4; ++p) {
        BoundParams bp;
        bp.d = 2;
        bp.p = p;
        for (long i = 0; i <= 400; ++i) {
            const double zd = std::pow(i / 10.0, 2.0 * p);
            const Rational z = exact_rational(zd);
            const double r = to_double(oracle::riesz_by_eigenvalue(lv, 1, z, p));
            CHECK(r >= bound_value("sd.r1p.twosided", bp, zd, Side::Lower) - 1e-9 * std::max(1.0, r));
            CHECK(r <= bound_value("sd.r1p.twosided", bp, zd, Side::Upper) + 1e-9 * std::max(1.0, r));
        }
    }
}

TEST_CASE("equality points") {
    const auto up = equality_points("s2.r1.upper", {}, 4);
    REQUIRE(up.size() == 4);
    CHECK(up[0] == doctest::Approx(0.5));
    CHECK(up[1] == doctest::Approx(3.5));
    CHECK(up[2] == doctest::Approx(8.5));
    CHECK(up[3] == doctest::Approx(15.5));
    const auto lo = equality_points("s2.r1.lower", {}, 4);
    REQUIRE(lo.size() == 4);
    CHECK(lo[0] == 0);
    CHECK(lo[1] == 2);
    CHECK(lo[2] == 6);
    CHECK(lo[3] == 12);

    // circle upper bound touches R_1 once per gap
    const auto circle = oracle::sphere_levels(1, 0, 30, [](long l) { return Integer(l == 0 ? 1 : 2); });
    const auto touch = equality_points("s1.r1.upper.shift", {}, 10);
    REQUIRE(touch.size() == 10);
    for (std::size_t i = 0; i < touch.size(); ++i) {
        CHECK(touch[i] >= double(i * i));
        CHECK(touch[i] <= double((i + 1) * (i + 1)));
        const double r = to_double(oracle::riesz_by_eigenvalue(circle, 1, exact_rational(touch[i])));
        CHECK(r == doctest::Approx(bound_value("s1.r1.upper.shift", {}, touch[i])).epsilon(1e-10));
    }
    CHECK_THROWS_AS(equality_points("dom.s2p.bly", {}, 3), std::domain_error);
    CHECK(equality_points("hemi2.nd.polya", {}, 2) == std::vector<double>{0.0, 2.0});
}

TEST_CASE("optimal shifts approach z_d") {
    for (int d = 1; d <= 6; ++d) {
        CHECK(shift_zd(d) == doctest::Approx((2.0 * d - 1) * d / 12));
        CHECK(std::abs(optimal_shift(d, 50) - shift_zd(d)) < 0.05);
        for (long l = 1; l <= 50; ++l) {
            // d/(d+2) (4^{-1/d} ((d+2l)(d+l-1)!/l!)^{2/d} - l(l+d))
            const double log_inner = std::log(d + 2.0 * l) + std::lgamma(d + l) - std::lgamma(l + 1.0);
            const double b = d / (d + 2.0) * (std::pow(4.0, -1.0 / d) * std::exp(2.0 / d * log_inner) - l * (l + d));
            CHECK(optimal_shift(d, l) == doctest::Approx(b).epsilon(1e-9));
        }
    }
    CHECK(shift_zd(3) == doctest::Approx(1.25));
}

TEST_CASE("Legendre transforms of Riesz bounds") {
    const auto a = legendre_average_bound("sd.r1.upper.shift", dim(2), 1);
    CHECK(a.value == doctest::Approx(0.0));
    CHECK(a.side == Side::Lower);
    const auto b = legendre_average_bound("sd.r1.lower", dim(2), 4);
    CHECK(b.value == doctest::Approx(2.0));
    CHECK(b.side == Side::Upper);
    CHECK(b.value >= 1.5);
    CHECK_THROWS(legendre_average_bound("sd.r1.lower", dim(2), 0));
    CHECK_THROWS(legendre_average_bound("hemi2.nd.polya", {}, 3));
    // non-power bounds go through the numerical maximization
    const auto c = legendre_average_bound("s2.r1.lower.imp", {}, 9);
    CHECK_FALSE(c.closed_form);
    CHECK(std::isfinite(c.value));
}

TEST_CASE("domain bounds are linear in the area") {
    for (const char* id : {"dom.s2p.bly", "dom.s2p.bly.imp", "dom.s2.buckling"}) {
        BoundParams a, b;
        a.area = 1.0;
        b.area = 3.0;
        for (double z : {1.5, 4.0, 30.0}) {
            CAPTURE(id);
            CHECK(bound_value(id, b, z) == doctest::Approx(3 * bound_value(id, a, z)));
        }
    }
    for (int d = 2; d <= 4; ++d) {
        BoundParams a = dim(d), b = dim(d);
        a.area = 0.5;
        b.area = 2.0;
        CHECK(bound_value("dom.sd.bly.shift", b, 7.0) == doctest::Approx(4 * bound_value("dom.sd.bly.shift", a, 7.0)));
    }
}

TEST_CASE("the improved domain bound is sharper above z = 1") {
    BoundParams a;
    a.area = 1.7;
    for (double z = 1.01; z < 500; z *= 1.1) CHECK(bound_value("dom.s2p.bly.imp", a, z) <= bound_value("dom.s2p.bly", a, z));
}

TEST_CASE("valid catalog entries verify cleanly") {
    for (const auto& spec : bound_catalog()) {
        if (!spec.expected_valid) continue;
        CAPTURE(spec.id);
        const auto rep = verify(spec.id, {});
        CHECK(rep.pass);
        CHECK(rep.violations.empty());
        for (const auto& eq : rep.equality_checks) CHECK(eq.ok);
    }
    const auto r = verify("hemi.d.bly345", dim(3));
    CHECK(r.pass);
    CHECK(r.n_points >= kStandardGridPoints);
}

TEST_CASE("documented failures are reproduced") {
    const auto polya = verify("fail.hemi.polya.d>=3", dim(3));
    CHECK(polya.pass);
    REQUIRE(polya.first_witness.has_value());
    CHECK(polya.first_witness->x == doctest::Approx(3.0));
    CHECK(polya.first_witness->target == 1.0);
    CHECK(polya.first_witness->bound == doctest::Approx(std::pow(3.0, 1.5) / 6));

    const auto ly = verify("fail.liyau.d>=6", dim(6));
    CHECK(ly.pass);
    REQUIRE(ly.first_witness.has_value());
    CHECK(ly.first_witness->x == 1.0);
    CHECK(std::pow(8.0, 6) < 720.0 * 720.0);

    BoundParams p2 = dim(2);
    p2.p = 2;
    const auto r1p = verify("fail.r1p.weyl", p2);
    CHECK(r1p.pass);
    CHECK(r1p.lower_violated);
    CHECK(r1p.upper_violated);

    const auto s1 = verify("fail.s1.weyl", {});
    CHECK(s1.lower_violated);
    CHECK(s1.upper_violated);

    const auto shifted = verify("fail.sd.r1.lower.bd", dim(3));
    CHECK(shifted.pass);
    REQUIRE(shifted.first_witness.has_value());
    CHECK(shifted.first_witness->x <= 3.0);
}

TEST_CASE("R_1 on S^2 violates the Weyl term with p = 2 at the documented points") {
    BoundParams p2 = dim(2);
    p2.p = 2;
    const auto lv = sphere2(20);
    for (long l = 1; l <= 6; ++l) {
        const Rational below(l * l * (l + 1) * (l + 1));
        const Rational above((1 + l) * (1 + l) * (2 + l * (2 + l)));
        const double weyl_below = bound_value("fail.r1p.weyl", p2, to_double(below), Side::Lower);
        const double weyl_above = bound_value("fail.r1p.weyl", p2, to_double(above), Side::Upper);
        CHECK(to_double(oracle::riesz_by_eigenvalue(lv, 1, below, 2)) < weyl_below);
        CHECK(to_double(oracle::riesz_by_eigenvalue(lv, 1, above, 2)) > weyl_above);
    }
}

TEST_CASE("verify tolerance and grids") {
    CHECK_THROWS(verify("s2.r1.lower", {}, 0.0));
    const auto rep = verify("s2.r1.lower", {}, std::vector<double>{0.0, 1.0, 2.0, 2.5});
    CHECK(rep.n_points == 4);
    CHECK(rep.pass);
    CHECK(rep.min_slack == doctest::Approx(0.0));
    CHECK(rep.argmin == 2.0);
    for (std::size_t i = 1; i < rep.points.size(); ++i) CHECK(rep.points[i - 1].x <= rep.points[i].x);
}

TEST_CASE("hemisphere gap diagnostics") {
    for (int d = 3; d <= 5; ++d) {
        const auto diag = bly_hemisphere_diagnostics(d, 30);
        REQUIRE(diag.size() == 30);
        for (const auto& g : diag) {
            CAPTURE(d);
            CAPTURE(g.L);
            CHECK(g.x_L >= 0);
            CHECK(g.x_L < 1);
            CHECK(g.f_at_x <= 1 + 1e-12);
            CHECK(g.f_at_x >= g.f_at_zero - 1e-12);
            CHECK(g.f_direct == doctest::Approx(g.f_at_x).epsilon(1e-10));
            CHECK(bly_ratio(d, g.L, g.x_L) == doctest::Approx(g.f_at_x).epsilon(1e-12));
        }
    }
}
