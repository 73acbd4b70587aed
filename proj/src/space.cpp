#include "spectral/space.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace spectral {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kDescriptorNames{{
    {Family::Sphere, "sphere"},
    {Family::HemisphereDirichlet, "hemisphere-d"},
    {Family::HemisphereNeumann, "hemisphere-n"},
    {Family::Circle, "circle"},
    {Family::RealProjective, "rp"},
    {Family::ComplexProjective, "cp"},
    {Family::QuaternionProjective, "hp"},
    {Family::CayleyPlane, "cayley"},
}};

std::string dim_error(std::string_view family, int d, std::string_view rule) {
    return std::string(family) + " needs " + std::string(rule) + ", got d=" + std::to_string(d);
}

Integer exact_quotient(const Integer& num, const Integer& den) {
    Integer q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("multiplicity formula produced a non-integer");
    return q;
}

}  // namespace

std::string_view family_name(Family f) {
    for (const auto& [fam, name] : kDescriptorNames)
        if (fam == f) return name;
    return "unknown";
}

Space::Space(Family family, int dim) : family_(family), dim_(dim) {
    const auto name = family_name(family);
    switch (family) {
        case Family::Sphere:
            if (dim < 1) throw std::invalid_argument(dim_error(name, dim, "d >= 1"));
            break;
        case Family::HemisphereDirichlet:
        case Family::HemisphereNeumann:
            if (dim < 2) throw std::invalid_argument(dim_error(name, dim, "d >= 2"));
            break;
        case Family::Circle:
            if (dim != 1) throw std::invalid_argument(dim_error(name, dim, "d = 1"));
            family_ = Family::Sphere;
            break;
        case Family::RealProjective:
            if (dim < 2) throw std::invalid_argument(dim_error(name, dim, "d >= 2"));
            break;
        case Family::ComplexProjective:
            if (dim < 4 || dim % 2 != 0) throw std::invalid_argument(dim_error(name, dim, "d in {4,6,8,...}"));
            break;
        case Family::QuaternionProjective:
            if (dim < 8 || dim % 4 != 0) throw std::invalid_argument(dim_error(name, dim, "d in {8,12,16,...}"));
            break;
        case Family::CayleyPlane:
            if (dim != 16) throw std::invalid_argument(dim_error(name, dim, "d = 16"));
            break;
        default:
            throw std::invalid_argument("unknown space family");
    }
}

Integer level_eigenvalue(const Space& space, long l) {
    const Integer L(l);
    const long d = space.dim();
    switch (space.family()) {
        case Family::Sphere:
        case Family::HemisphereDirichlet:
        case Family::HemisphereNeumann:
            return L * (L + d - 1);
        case Family::RealProjective:
            return 2 * L * (2 * L + d - 1);
        case Family::ComplexProjective:
            return L * (2 * L + d) / 2;
        case Family::QuaternionProjective:
            return L * (2 * L + d + 2) / 2;
        case Family::CayleyPlane:
            return L * (2 * L + d + 6) / 2;
        default:
            throw std::logic_error("unreachable family");
    }
}

EnergyLevel energy_level(const Space& space, long l) {
    if (l < space.first_level()) {
        if (space.family() == Family::HemisphereDirichlet)
            throw std::domain_error("hemisphere-d has no level l=0; levels start at l=1");
        throw std::domain_error("level index must be nonnegative, got l=" + std::to_string(l));
    }
    const long d = space.dim();
    Integer m;
    switch (space.family()) {
        case Family::Sphere:
            m = binomial(d + l, l) - binomial(d + l - 2, l - 2);
            break;
        case Family::HemisphereDirichlet:
            m = binomial(d + l - 2, d - 1);
            break;
        case Family::HemisphereNeumann:
            m = binomial(d + l - 1, d - 1);
            break;
        case Family::RealProjective:
            m = l == 0 ? Integer(1) : exact_quotient((4 * l + d - 1) * binomial(d + 2 * l - 2, d - 1), Integer(2 * l));
            break;
        case Family::ComplexProjective: {
            const Integer c = binomial(d / 2 + l - 1, d / 2 - 1);
            m = exact_quotient((d + 4 * l) * c * c, Integer(d));
            break;
        }
        case Family::QuaternionProjective:
            m = l == 0 ? Integer(1)
                       : exact_quotient((4 * l + d + 2) * binomial(d / 2 + l - 1, d / 2 - 1) * binomial(d / 2 + l, d / 2 + 1),
                                        Integer(2 * l * (l + 1)));
            break;
        case Family::CayleyPlane:
            m = l == 0 ? Integer(1)
                       : exact_quotient(3 * (4 * l + d + 6) * binomial(d / 2 + l - 1, d / 2 - 1) * binomial(d / 2 + l + 2, d / 2 + 3),
                                        Integer(l) * (l + 1) * (l + 2) * (l + 3));
            break;
        default:
            throw std::logic_error("unreachable family");
    }
    return {l, level_eigenvalue(space, l), m};
}

Integer first_positive_eigenvalue(const Space& space) { return level_eigenvalue(space, 1); }

namespace {

template <class Z>
std::optional<long> max_level_index_impl(const Space& space, const Z& z) {
    const long first = space.first_level();
    if (compare(level_eigenvalue(space, first), z) > 0) return std::nullopt;
    long lo = first;  // lambda(lo) <= z
    long hi = first + 1;
    while (compare(level_eigenvalue(space, hi), z) <= 0) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 40)) throw std::range_error("spectral parameter too large for level search");
    }
    while (hi - lo > 1) {  // lambda(lo) <= z < lambda(hi)
        const long mid = lo + (hi - lo) / 2;
        if (compare(level_eigenvalue(space, mid), z) <= 0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

std::optional<long> max_level_index(const Space& space, double z) {
    if (std::isnan(z)) throw std::domain_error("spectral parameter is NaN");
    return max_level_index_impl(space, z);
}

std::optional<long> max_level_index(const Space& space, const Rational& z) { return max_level_index_impl(space, z); }

double invert_w(int d, double z) {
    if (d < 1) throw std::domain_error("invert_w needs d >= 1");
    if (z < 0) throw std::domain_error("invert_w needs z >= 0");
    if (z == 0) return 0.0;
    const double a = d - 1;
    // cancellation-free form of (-(d-1) + sqrt((d-1)^2 + 4z)) / 2
    double w = 2.0 * z / (a + std::sqrt(a * a + 4.0 * z));
    const double f = std::fma(w, w, std::fma(a, w, -z));
    w -= f / (2.0 * w + a);
    return w;
}

double fluctuation(double w) { return w - std::floor(w) - 0.5; }

WPhase phase_at(int d, double z) {
    const double w = invert_w(d, z);
    const double n = std::nearbyint(w);
    if (n >= 1.0 && std::fabs(w - n) <= 8.0 * (std::nextafter(n, INFINITY) - n)) return {n, -0.5};
    return {w, fluctuation(w)};
}

PiPower volume(const Space& space) {
    const int d = space.dim();
    const PiPower sphere = PiPower{Rational(2), d + 1} / gamma_exact(Rational(d + 1, 2));
    switch (space.family()) {
        case Family::Sphere:
            return sphere;
        case Family::HemisphereDirichlet:
        case Family::HemisphereNeumann:
        case Family::RealProjective:
            return PiPower{sphere.coefficient / 2, sphere.half_pi_exponent};
        case Family::ComplexProjective: {
            const int n = d / 2;
            return {Rational(boost::multiprecision::pow(Integer(4), n), factorial(n)), d};
        }
        case Family::QuaternionProjective: {
            const int n = d / 4;
            return {Rational(boost::multiprecision::pow(Integer(4), 2 * n), factorial(2 * n + 1)), d};
        }
        case Family::CayleyPlane:
            return {Rational(6 * boost::multiprecision::pow(Integer(4), 8), factorial(11)), 16};
        default:
            throw std::logic_error("unreachable family");
    }
}

std::string to_descriptor(const Space& space) {
    return std::string(family_name(space.family())) + ":" + std::to_string(space.dim());
}

Space parse_space(std::string_view descriptor) {
    const auto colon = descriptor.find(':');
    const auto name = descriptor.substr(0, colon);
    for (const auto& [family, fname] : kDescriptorNames) {
        if (fname != name) continue;
        int dim = 0;
        if (colon == std::string_view::npos) {
            if (family == Family::Circle)
                dim = 1;
            else if (family == Family::CayleyPlane)
                dim = 16;
            else
                throw std::invalid_argument("descriptor '" + std::string(descriptor) + "' needs a dimension, e.g. " +
                                            std::string(fname) + ":3");
        } else {
            const auto digits = descriptor.substr(colon + 1);
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
            if (ec != std::errc() || p != digits.data() + digits.size() || digits.empty())
                throw std::invalid_argument("malformed dimension in descriptor '" + std::string(descriptor) + "'");
        }
        return Space(family, dim);
    }
    std::string valid;
    for (const auto& [family, fname] : kDescriptorNames) valid += (valid.empty() ? "" : ", ") + std::string(fname);
    throw std::invalid_argument("unknown space family '" + std::string(name) + "'; valid families: " + valid);
}

}  // namespace spectral
