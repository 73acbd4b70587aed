#pragma once

#include "spectral/exact.hpp"
#include "spectral/space.hpp"

#include <optional>
#include <span>
#include <vector>

namespace spectral {

enum class Quantity { N, R1, R2, Average };

std::string_view quantity_name(Quantity q);
Quantity parse_quantity(std::string_view name);

struct SemiclassicalConstant {
    int gamma;
    int d;
    int p;
    double value;
    std::optional<PiPower> exact;  // present when every Gamma argument is a (half-)integer
};

// L^class_{gamma,d,p} = (4pi)^{-d/2} G(g+1) G(1+d/2p) / (G(1+d/2) G(1+g+d/2p))
SemiclassicalConstant lclass(int gamma, int d, int p = 1);

struct Volumes {
    PiPower sphere;                             // |S^d|
    std::optional<PiPower> hemisphere;          // |S^d_+|
    std::optional<PiPower> hemisphere_boundary; // |S^{d-1}|
    PiPower unit_ball;                          // omega_d
};

Volumes volumes(int d);

// Leading Weyl term L^class_{gamma,d} |M| z^{gamma + d/2} of a Laplacian quantity.
struct WeylTerm {
    Rational coefficient;
    Rational exponent;
    double operator()(double z) const;
};

WeylTerm weyl_term(const Space& space, Quantity q);

// Ratio expansion 1 + c_half z^{-1/2} + c_one z^{-1} around the Weyl term.
struct ExpansionCoefficients {
    WeylTerm leading;
    double c_half;
    double c_one;
    int max_terms;
};

ExpansionCoefficients expansion_coefficients(const Space& space, Quantity q, double psi);

struct ExpansionEval {
    double value;
    int order;
    double remainder_scale;  // power of z carried by the first dropped term of the ratio
};

ExpansionEval expansion(const Space& space, Quantity q, double z, int terms);

template <class T>
struct Pab {
    T a;
    T b;
};

template <class T>
T pab(const T& a, const T& b, const T& x) {
    return T(1) + a * x + b * x * x;
}

// prod_j P_{a_j,b_j} = P_{A, B+C} + O(x^3), A = sum a, B = sum b, C = (A^2 - sum a^2)/2
template <class T>
Pab<T> pab_product(std::span<const Pab<T>> factors) {
    T A(0), B(0), sq(0);
    for (const auto& f : factors) {
        A += f.a;
        B += f.b;
        sq += f.a * f.a;
    }
    return {A, T(B + (A * A - sq) / 2)};
}

// 1 / P_{a,b} = P_{-a, a^2-b} + O(x^3)
template <class T>
Pab<T> pab_inverse(const Pab<T>& p) {
    return {T(-p.a), T(p.a * p.a - p.b)};
}

// P_{a,b}(x / (1 + c x)) = P_{a, b - a c} + O(x^3)
template <class T>
Pab<T> pab_substitute(const Pab<T>& p, const T& c) {
    return {p.a, T(p.b - p.a * c)};
}

struct GammaCheck {
    double max_scaled_deviation;  // max |Gamma(x)/S(x) - 1| x^3
    double argmax;
    std::vector<double> scaled_deviation;
};

// Compares Gamma with sqrt(2pi) x^{x-1/2} e^{-x} (1 + 1/(12x) + 1/(288x^2)).
GammaCheck gamma_asymptotic_check(std::span<const double> xs);

}  // namespace spectral
