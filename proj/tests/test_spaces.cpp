#include "doctest.h"
#include "oracles.hpp"

#include "spectral/space.hpp"
#include "spectral/weyl.hpp"

#include <cmath>
#include <stdexcept>

using namespace spectral;

namespace {

struct LevelCase {
    Space space;
    long l;
    long lambda;
    long mult;
};

std::vector<Space> all_spaces() {
    std::vector<Space> out;
    for (int d = 1; d <= 6; ++d) out.push_back(Space::sphere(d));
    for (int d = 2; d <= 6; ++d) {
        out.push_back(Space::hemisphere_dirichlet(d));
        out.push_back(Space::hemisphere_neumann(d));
        out.push_back(Space(Family::RealProjective, d));
    }
    for (int d : {4, 6, 8}) out.push_back(Space(Family::ComplexProjective, d));
    for (int d : {8, 12}) out.push_back(Space(Family::QuaternionProjective, d));
    out.push_back(Space(Family::CayleyPlane, 16));
    return out;
}

}  // namespace

TEST_CASE("energy levels at tabulated points") {
    const LevelCase cases[] = {
        {Space::sphere(2), 3, 12, 7},
        {Space::sphere(1), 2, 4, 2},
        {Space(Family::Circle, 1), 2, 4, 2},
        {Space::sphere(3), 2, 8, 9},
        {Space::hemisphere_neumann(2), 1, 2, 2},
        {Space(Family::ComplexProjective, 4), 1, 3, 8},
        {Space(Family::RealProjective, 2), 1, 6, 5},
    };
    for (const auto& c : cases) {
        CAPTURE(to_descriptor(c.space));
        const auto lv = energy_level(c.space, c.l);
        CHECK(lv.lambda == c.lambda);
        CHECK(lv.mult == c.mult);
    }
}

TEST_CASE("circle levels 0,1,1,4,4,9,9") {
    const Space s1 = Space::sphere(1);
    CHECK(energy_level(s1, 0).mult == 1);
    for (long l = 1; l <= 50; ++l) {
        CHECK(energy_level(s1, l).lambda == l * l);
        CHECK(energy_level(s1, l).mult == 2);
    }
}

TEST_CASE("sphere multiplicities count harmonic polynomials") {
    for (int d = 1; d <= 16; ++d)
        for (long l = 0; l <= 60; ++l) {
            CAPTURE(d);
            CAPTURE(l);
            const auto lv = energy_level(Space::sphere(d), l);
            CHECK(lv.mult == oracle::sphere_mult(d, l));
            CHECK(lv.lambda == Integer(l) * (l + d - 1));
        }
}

TEST_CASE("multiplicities are exact beyond 64 bits") {
    const auto lv = energy_level(Space::sphere(16), 200);
    CHECK(lv.mult == oracle::sphere_mult(16, 200));
    CHECK(lv.mult > Integer(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("hemispheres: parity split of harmonics") {
    for (int d = 2; d <= 10; ++d)
        for (long l = 1; l <= 60; ++l) {
            const auto D = energy_level(Space::hemisphere_dirichlet(d), l);
            const auto N = energy_level(Space::hemisphere_neumann(d), l);
            CHECK(D.mult == oracle::hemi_dirichlet_mult(d, l));
            CHECK(N.mult == oracle::hemi_neumann_mult(d, l));
            CHECK(D.mult + N.mult == energy_level(Space::sphere(d), l).mult);
            CHECK(D.lambda == N.lambda);
        }
    CHECK(energy_level(Space::hemisphere_neumann(3), 0).mult == 1);
    // d = 2: Dirichlet multiplicity l, Neumann l + 1
    for (long l = 1; l <= 20; ++l) {
        CHECK(energy_level(Space::hemisphere_dirichlet(2), l).mult == l);
        CHECK(energy_level(Space::hemisphere_neumann(2), l).mult == l + 1);
    }
}

TEST_CASE("Dirichlet hemisphere has no zero level") {
    CHECK_THROWS_AS(energy_level(Space::hemisphere_dirichlet(2), 0), std::domain_error);
    CHECK_THROWS_AS(energy_level(Space::sphere(2), -1), std::domain_error);
}

TEST_CASE("real projective space keeps the even harmonics") {
    for (int d = 2; d <= 8; ++d)
        for (long l = 0; l <= 100; ++l) {
            const auto rp = energy_level(Space(Family::RealProjective, d), l);
            const auto s = energy_level(Space::sphere(d), 2 * l);
            CHECK(rp.lambda == s.lambda);
            CHECK(rp.mult == s.mult);
        }
}

TEST_CASE("complex projective multiplicities") {
    for (int d : {4, 6, 8, 10})
        for (long l = 0; l <= 40; ++l) {
            const int n = d / 2;
            const auto lv = energy_level(Space(Family::ComplexProjective, d), l);
            CHECK(lv.mult == oracle::cp_mult(n, l));
            CHECK(lv.lambda == Integer(l) * (l + n));
        }
}

TEST_CASE("first eigenspaces of the quaternionic and octonionic planes") {
    // adjoint-type representations: dim 14 for Sp(3), 26 for F4
    CHECK(energy_level(Space(Family::QuaternionProjective, 8), 1).mult == 14);
    CHECK(energy_level(Space(Family::CayleyPlane, 16), 1).mult == 26);
    CHECK(energy_level(Space(Family::QuaternionProjective, 8), 0).mult == 1);
    CHECK(energy_level(Space(Family::CayleyPlane, 16), 0).mult == 1);
}

TEST_CASE("dimension constraints") {
    CHECK_THROWS_AS(Space::sphere(0), std::invalid_argument);
    CHECK_THROWS_AS(Space::hemisphere_dirichlet(1), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::Circle, 2), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::RealProjective, 1), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::ComplexProjective, 5), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::ComplexProjective, 2), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::QuaternionProjective, 6), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::QuaternionProjective, 4), std::invalid_argument);
    CHECK_THROWS_AS(Space(Family::CayleyPlane, 8), std::invalid_argument);
    CHECK_NOTHROW(Space(Family::ComplexProjective, 4));
    CHECK_NOTHROW(Space(Family::QuaternionProjective, 12));
}

TEST_CASE("levels increase strictly, closed spaces start with a simple zero") {
    for (const auto& s : all_spaces()) {
        CAPTURE(to_descriptor(s));
        Integer prev = -1;
        for (long l = s.first_level(); l <= 200; ++l) {
            const auto lv = energy_level(s, l);
            CHECK(lv.lambda > prev);
            CHECK(lv.mult >= 1);
            prev = lv.lambda;
        }
        if (s.is_closed()) {
            CHECK(energy_level(s, 0).lambda == 0);
            CHECK(energy_level(s, 0).mult == 1);
        }
    }
}

TEST_CASE("max_level_index") {
    CHECK(max_level_index(Space::sphere(2), 6.0) == 2);
    CHECK(max_level_index(Space::sphere(2), 5.9) == 1);
    CHECK(max_level_index(Space::sphere(2), Rational(6)) == 2);
    CHECK(max_level_index(Space::sphere(2), 0.0) == 0);
    CHECK_FALSE(max_level_index(Space::hemisphere_dirichlet(3), 2.5).has_value());
    CHECK(max_level_index(Space::hemisphere_dirichlet(3), 3.0) == 1);

    // jumps by one exactly at each level, right-continuous
    for (const auto& s : all_spaces()) {
        CAPTURE(to_descriptor(s));
        for (long l = s.first_level() + 1; l <= 60; ++l) {
            const Rational lam(level_eigenvalue(s, l));
            CHECK(max_level_index(s, lam) == l);
            CHECK(max_level_index(s, Rational(lam - Rational(1, 1000000))) == l - 1);
            const double ld = to_double(lam);
            CHECK(max_level_index(s, ld) == l);
            CHECK(max_level_index(s, std::nextafter(ld, 0.0)) == l - 1);
        }
    }
}

TEST_CASE("invert_w") {
    CHECK(invert_w(2, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(invert_w(3, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(invert_w(2, 3.75) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(invert_w(1, 0.0) == 0.0);
    for (int d = 1; d <= 16; ++d)
        for (double z : {1e-8, 0.3, 7.0, 123.456, 1e6, 3.3e11}) {
            const double w = invert_w(d, z);
            CHECK(w >= 0);
            const Rational rw = exact_rational(w);
            const Rational back = rw * (rw + d - 1);
            CAPTURE(d);
            CAPTURE(z);
            CHECK(to_double(Rational(abs(back - exact_rational(z)))) <= 4 * (std::nextafter(z, INFINITY) - z));
        }
    CHECK_THROWS(invert_w(2, -1.0));
}

TEST_CASE("fluctuation") {
    CHECK(fluctuation(1.0) == -0.5);
    CHECK(fluctuation(1.5) == 0.0);
    CHECK(fluctuation(2.75) == 0.25);
    CHECK(fluctuation(0.0) == -0.5);
    for (double w = 0; w < 20; w += 0.37) {
        const double f = fluctuation(w);
        CHECK(f >= -0.5);
        CHECK(f < 0.5);
    }
}

TEST_CASE("descriptors round trip") {
    for (const auto& s : all_spaces()) CHECK(parse_space(to_descriptor(s)) == s);
    CHECK(parse_space("circle") == Space::sphere(1));
    CHECK_THROWS_AS(parse_space("torus:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("sphere"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("sphere:x"), std::invalid_argument);
}

TEST_CASE("counting at a level over the Weyl term tends to one") {
    // N(lambda_L) / (L_{0,d} |M| lambda_L^{d/2}) -> 1
    for (const auto& s : all_spaces()) {
        CAPTURE(to_descriptor(s));
        const int d = s.dim();
        const double weyl_const = lclass(0, d).value * volume(s).value();
        auto ratio_at = [&](long L) {
            Integer n = 0;
            for (long l = s.first_level(); l <= L; ++l) n += energy_level(s, l).mult;
            const double lam = to_double(level_eigenvalue(s, L));
            return to_double(n) / (weyl_const * std::pow(lam, d / 2.0));
        };
        const double r1 = ratio_at(100), r2 = ratio_at(400);
        CHECK(std::abs(r2 - 1) < std::abs(r1 - 1) + 1e-12);
        CHECK(std::abs(r2 - 1) < 0.1);
    }
}

TEST_CASE("sphere volumes") {
    CHECK(volume(Space::sphere(1)).value() == doctest::Approx(2 * std::numbers::pi));
    CHECK(volume(Space::sphere(2)).value() == doctest::Approx(4 * std::numbers::pi));
    CHECK(volume(Space::sphere(3)).value() == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
    CHECK(volume(Space::hemisphere_dirichlet(2)).value() == doctest::Approx(2 * std::numbers::pi));
    CHECK(volume(Space(Family::RealProjective, 2)).value() == doctest::Approx(2 * std::numbers::pi));
}
