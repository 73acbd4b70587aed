#include "spectral/weyl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectral {

std::string_view quantity_name(Quantity q) {
    switch (q) {
        case Quantity::N: return "N";
        case Quantity::R1: return "R1";
        case Quantity::R2: return "R2";
        case Quantity::Average: return "average";
    }
    return "?";
}

Quantity parse_quantity(std::string_view name) {
    if (name == "N" || name == "n" || name == "R0") return Quantity::N;
    if (name == "R1" || name == "r1") return Quantity::R1;
    if (name == "R2" || name == "r2") return Quantity::R2;
    if (name == "average" || name == "avg") return Quantity::Average;
    throw std::invalid_argument("unknown quantity '" + std::string(name) + "'; valid: N, R1, R2, average");
}

SemiclassicalConstant lclass(int gamma, int d, int p) {
    if (gamma < 0 || gamma > 2) throw std::domain_error("lclass needs gamma in {0,1,2}");
    if (d < 1 || p < 1) throw std::domain_error("lclass needs d >= 1 and p >= 1");
    SemiclassicalConstant c{gamma, d, p, 0.0, std::nullopt};
    const Rational s(d, 2 * p);  // d/(2p)
    if (is_half_integer_point(s + 1)) {
        const PiPower four_pi{Rational(1, boost::multiprecision::pow(Integer(2), static_cast<unsigned>(d))), -d};
        c.exact = four_pi * gamma_exact(Rational(gamma + 1)) * gamma_exact(s + 1) /
                  (gamma_exact(Rational(d, 2) + 1) * gamma_exact(s + 1 + gamma));
        c.value = c.exact->value();
    } else {
        const double sd = static_cast<double>(d) / (2.0 * p);
        c.value = std::pow(4.0 * std::numbers::pi, -0.5 * d) * std::tgamma(gamma + 1.0) * std::tgamma(1.0 + sd) /
                  (std::tgamma(1.0 + 0.5 * d) * std::tgamma(1.0 + gamma + sd));
    }
    return c;
}

Volumes volumes(int d) {
    if (d < 1) throw std::domain_error("volumes need d >= 1");
    Volumes v{volume(Space::sphere(d)), std::nullopt, std::nullopt,
              PiPower{Rational(1), d} / gamma_exact(Rational(d, 2) + 1)};
    if (d >= 2) {
        v.hemisphere = volume(Space::hemisphere_dirichlet(d));
        v.hemisphere_boundary = volume(Space::sphere(d - 1));
    }
    return v;
}

double WeylTerm::operator()(double z) const {
    if (z <= 0) return 0.0;
    return to_double(coefficient) * std::pow(z, to_double(exponent));
}

WeylTerm weyl_term(const Space& space, Quantity q) {
    int gamma = 0;
    if (q == Quantity::R1)
        gamma = 1;
    else if (q == Quantity::R2)
        gamma = 2;
    else if (q != Quantity::N)
        throw std::invalid_argument("Weyl term defined for N, R1 and R2");
    const int d = space.dim();
    const PiPower c = *lclass(gamma, d, 1).exact * volume(space);
    if (!c.is_rational()) throw std::logic_error("Weyl coefficient is not rational");
    return {c.coefficient, Rational(gamma) + Rational(d, 2)};
}

ExpansionCoefficients expansion_coefficients(const Space& space, Quantity q, double psi) {
    if (!space.has_sphere_levels() || (q != Quantity::N && q != Quantity::R1))
        throw std::invalid_argument("no asymptotic expansion is available for " + std::string(quantity_name(q)) +
                                    " on " + to_descriptor(space));
    const double d = space.dim();
    ExpansionCoefficients e{weyl_term(space, q), 0.0, 0.0, 3};
    const double quarter_minus_psi2 = 0.25 - psi * psi;
    switch (space.family()) {
        case Family::Sphere:
            if (q == Quantity::N) {
                e.c_half = -d * psi;
                e.c_one = d * (d - 1) * (12 * psi * psi + 2 * d - 1) / 24;
            } else {
                e.c_one = d * (d + 2) / 12 * (d - 2 + 6 * quarter_minus_psi2);
                e.max_terms = 2;
            }
            break;
        case Family::HemisphereDirichlet:
            if (q == Quantity::N) {
                e.c_half = -d * (1 + 2 * psi) / 2;
                e.c_one = d * (d - 1) / 2 * ((0.5 + psi) * (0.5 + psi) + (d - 2) / 6);
            } else {
                e.c_half = -d * (d + 2) / (2 * (d + 1));
                e.c_one = d * (d + 2) / 2 * (quarter_minus_psi2 + (d - 2) / 6);
            }
            break;
        case Family::HemisphereNeumann:
            if (q == Quantity::N) {
                e.c_half = d * (1 - 2 * psi) / 2;
                e.c_one = d * (d - 1) / 2 * ((0.5 - psi) * (0.5 - psi) + (d - 2) / 6);
            } else {
                e.c_half = d * (d + 2) / (2 * (d + 1));
                e.c_one = d * (d + 2) / 2 * (quarter_minus_psi2 + (d - 2) / 6);
            }
            break;
        default:
            throw std::logic_error("unreachable family");
    }
    return e;
}

ExpansionEval expansion(const Space& space, Quantity q, double z, int terms) {
    if (!(z > 0)) throw std::domain_error("expansion needs z > 0");
    const ExpansionCoefficients e = expansion_coefficients(space, q, phase_at(space.dim(), z).psi);
    if (terms < 1 || terms > e.max_terms)
        throw std::invalid_argument("expansion of " + std::string(quantity_name(q)) + " on " + to_descriptor(space) +
                                    " has " + std::to_string(e.max_terms) + " known terms, requested " +
                                    std::to_string(terms));
    double ratio = 1.0;
    double remainder;
    if (e.max_terms == 2) {  // no z^{-1/2} term; the remainder is only o(z^{-1})
        if (terms == 2) ratio += e.c_one / z;
        remainder = terms == 1 ? -1.0 : -1.25;
    } else {
        if (terms >= 2) ratio += e.c_half / std::sqrt(z);
        if (terms >= 3) ratio += e.c_one / z;
        remainder = -0.5 * terms;
    }
    return {e.leading(z) * ratio, terms, remainder};
}

GammaCheck gamma_asymptotic_check(std::span<const double> xs) {
    GammaCheck g{0.0, 0.0, {}};
    g.scaled_deviation.reserve(xs.size());
    for (double x : xs) {
        if (!(x >= 5.0) || x > 170.0) throw std::domain_error("gamma check needs 5 <= x <= 170");
        const long double lx = x;
        const long double stirling = std::sqrt(2.0L * std::numbers::pi_v<long double>) *
                                     std::exp((lx - 0.5L) * std::log(lx) - lx) *
                                     (1.0L + 1.0L / (12.0L * lx) + 1.0L / (288.0L * lx * lx));
        const double dev = static_cast<double>(std::fabs(std::tgamma(lx) / stirling - 1.0L) * lx * lx * lx);
        g.scaled_deviation.push_back(dev);
        if (dev > g.max_scaled_deviation) {
            g.max_scaled_deviation = dev;
            g.argmax = x;
        }
    }
    return g;
}

}  // namespace spectral
