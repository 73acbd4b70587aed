#pragma once

#include "spectral/exact.hpp"
#include "spectral/space.hpp"

#include <span>
#include <vector>

namespace spectral {

enum class Variant { Standard, Buckling };

// Spectrum of (-Delta)^power on a space; Buckling drops the zero level of a sphere.
struct SpectrumQuery {
    Space space;
    int power = 1;
    Variant variant = Variant::Standard;

    SpectrumQuery(Space s, int p = 1, Variant v = Variant::Standard);
    friend bool operator==(const SpectrumQuery&, const SpectrumQuery&) = default;
};

inline constexpr long kDefaultLevelCap = 10'000;

struct SpectralLevel {
    long l;
    Integer lambda;  // Laplacian level lambda_(l)
    Integer value;   // lambda_(l)^power
    Integer mult;
    double value_d;
    double mult_d;
};

struct PrefixSums {
    long k;
    Integer sum1;
    Integer sum2;
};

template <Scalar T>
struct BruteForce {
    T value;
    long levels_summed;
    long level_cap;
};

// Immutable level table of a query. All evaluations are pure reads.
class Spectrum {
public:
    // Every level with value <= z_max, plus the first level above it.
    static Spectrum covering(const SpectrumQuery& q, double z_max, long level_cap = kDefaultLevelCap);
    static Spectrum covering(const SpectrumQuery& q, const Rational& z_max, long level_cap = kDefaultLevelCap);
    // Enough levels to hold the first k eigenvalues (with multiplicity).
    static Spectrum with_count(const SpectrumQuery& q, const Integer& k, long level_cap = kDefaultLevelCap);
    static Spectrum first_levels(const SpectrumQuery& q, long n_levels, long level_cap = kDefaultLevelCap);

    const SpectrumQuery& query() const { return query_; }
    std::span<const SpectralLevel> levels() const { return levels_; }
    long level_cap() const { return level_cap_; }

    // Number of leading table levels with value <= z. Throws when z is beyond
    // the table (the answer would depend on levels that were not built).
    std::size_t levels_at_or_below(double z) const;
    std::size_t levels_at_or_below(const Rational& z) const;

    Integer counting(double z) const;
    Integer counting(const Rational& z) const;

    template <Scalar T>
    T riesz(int gamma, const T& z) const;

    PrefixSums prefix(const Integer& k) const;

private:
    Spectrum(SpectrumQuery q, long cap) : query_(std::move(q)), level_cap_(cap) {}
    void push_next();
    template <class Z>
    std::size_t count_le(const Z& z) const;

    SpectrumQuery query_;
    long level_cap_;
    std::vector<SpectralLevel> levels_;
};

Integer counting(const SpectrumQuery& q, double z);
Integer counting(const SpectrumQuery& q, const Rational& z);

template <Scalar T>
BruteForce<T> riesz_mean_detailed(const SpectrumQuery& q, int gamma, const T& z, long level_cap = kDefaultLevelCap);

template <Scalar T>
T riesz_mean(const SpectrumQuery& q, int gamma, const T& z) {
    return riesz_mean_detailed(q, gamma, z).value;
}

// R_1 on S^d from the closed form with an exact integer Gamma ratio.
template <Scalar T>
T riesz1_closed_sphere(int d, const T& z);

// Closed forms of the hemisphere counting functions as binomials.
Integer counting_closed_hemisphere(const Space& hemisphere, double z);
Integer counting_closed_hemisphere(const Space& hemisphere, const Rational& z);

// sum_{l>=1} (2l+1)(z - l^p (l+1)^p)_+
template <Scalar T>
T lemma_sum(int p, const T& z);

template <Scalar T>
struct TransformCheck {
    T lhs;           // sum (z^p - lambda^p)_+
    T rhs_riesz;     // -p(p-1) int s^{p-2} R_1(s) ds + p z^{p-1} R_1(z)
    T rhs_counting;  // p int s^{p-1} N(s) ds
    double residual;  // largest difference relative to max(1, |lhs|)
};

// Both integral transforms on S^d, integrated exactly between breakpoints.
template <Scalar T>
TransformCheck<T> poly_transform_check(int d, int p, const T& z);

PrefixSums prefix_sums(const SpectrumQuery& q, long k);
Rational eigenvalue_average(const SpectrumQuery& q, long k);

}  // namespace spectral
