#include "spectral/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectral {

namespace {

// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <Scalar T>
T ipow(const T& x, int n) {
    T r(1);
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

SpectrumQuery::SpectrumQuery(Space s, int p, Variant v) : space(s), power(p), variant(v) {
    if (p < 1) throw std::invalid_argument("operator power must be >= 1, got " + std::to_string(p));
    if (v == Variant::Buckling && s.family() != Family::Sphere)
        throw std::invalid_argument("the buckling spectrum is only defined here on the whole sphere");
}

void Spectrum::push_next() {
    if (static_cast<long>(levels_.size()) >= level_cap_)
        throw std::range_error("level cap of " + std::to_string(level_cap_) + " levels exceeded");
    long l = query_.space.first_level();
    if (query_.variant == Variant::Buckling) l = 1;
    if (!levels_.empty()) l = levels_.back().l + 1;
    EnergyLevel e = energy_level(query_.space, l);
    Integer value = boost::multiprecision::pow(e.lambda, static_cast<unsigned>(query_.power));
    const double vd = to_double(value);
    const double md = to_double(e.mult);
    levels_.push_back({l, std::move(e.lambda), std::move(value), std::move(e.mult), vd, md});
}

Spectrum Spectrum::covering(const SpectrumQuery& q, double z_max, long level_cap) {
    if (std::isnan(z_max)) throw std::domain_error("spectral parameter is NaN");
    Spectrum s(q, level_cap);
    do s.push_next();
    while (compare(s.levels_.back().value, z_max) <= 0);
    return s;
}

Spectrum Spectrum::covering(const SpectrumQuery& q, const Rational& z_max, long level_cap) {
    Spectrum s(q, level_cap);
    do s.push_next();
    while (compare(s.levels_.back().value, z_max) <= 0);
    return s;
}

Spectrum Spectrum::with_count(const SpectrumQuery& q, const Integer& k, long level_cap) {
    Spectrum s(q, level_cap);
    Integer total = 0;
    while (total < k) {
        s.push_next();
        total += s.levels_.back().mult;
    }
    s.push_next();
    return s;
}

Spectrum Spectrum::first_levels(const SpectrumQuery& q, long n_levels, long level_cap) {
    Spectrum s(q, level_cap);
    for (long i = 0; i < n_levels; ++i) s.push_next();
    return s;
}

template <class Z>
std::size_t Spectrum::count_le(const Z& z) const {
    const auto it = std::partition_point(levels_.begin(), levels_.end(),
                                         [&](const SpectralLevel& lv) { return compare(lv.value, z) <= 0; });
    const auto n = static_cast<std::size_t>(it - levels_.begin());
    if (n == levels_.size()) throw std::out_of_range("spectral parameter beyond the built level table");
    return n;
}

std::size_t Spectrum::levels_at_or_below(double z) const {
    if (std::isnan(z)) throw std::domain_error("spectral parameter is NaN");
    return count_le(z);
}

std::size_t Spectrum::levels_at_or_below(const Rational& z) const { return count_le(z); }

Integer Spectrum::counting(double z) const {
    Integer n = 0;
    for (std::size_t i = 0, e = levels_at_or_below(z); i < e; ++i) n += levels_[i].mult;
    return n;
}

Integer Spectrum::counting(const Rational& z) const {
    Integer n = 0;
    for (std::size_t i = 0, e = levels_at_or_below(z); i < e; ++i) n += levels_[i].mult;
    return n;
}

template <Scalar T>
T Spectrum::riesz(int gamma, const T& z) const {
    if (gamma < 0 || gamma > 2) throw std::domain_error("Riesz order must be 0, 1 or 2");
    const std::size_t n = levels_at_or_below(z);
    if constexpr (std::same_as<T, double>) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < n; ++i) {
            const double gap = z - levels_[i].value_d;
            acc.add(levels_[i].mult_d * (gamma == 0 ? 1.0 : gamma == 1 ? gap : gap * gap));
        }
        return acc.value();
    } else {
        Rational acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational gap = z - Rational(levels_[i].value);
            acc += Rational(levels_[i].mult) * (gamma == 0 ? Rational(1) : gamma == 1 ? gap : Rational(gap * gap));
        }
        return acc;
    }
}

template double Spectrum::riesz<double>(int, const double&) const;
template Rational Spectrum::riesz<Rational>(int, const Rational&) const;

PrefixSums Spectrum::prefix(const Integer& k) const {
    if (k < 1) throw std::domain_error("prefix sums need k >= 1");
    PrefixSums ps{k.convert_to<long>(), 0, 0};
    Integer remaining = k;
    for (const auto& lv : levels_) {
        const Integer take = remaining < lv.mult ? remaining : lv.mult;
        ps.sum1 += take * lv.value;
        ps.sum2 += take * lv.value * lv.value;
        remaining -= take;
        if (remaining == 0) return ps;
    }
    throw std::out_of_range("level table holds fewer than k eigenvalues");
}

Integer counting(const SpectrumQuery& q, double z) {
    if (z < 0) return 0;
    return Spectrum::covering(q, z).counting(z);
}

Integer counting(const SpectrumQuery& q, const Rational& z) {
    if (z < 0) return 0;
    return Spectrum::covering(q, z).counting(z);
}

template <Scalar T>
BruteForce<T> riesz_mean_detailed(const SpectrumQuery& q, int gamma, const T& z, long level_cap) {
    if (z < 0) return {T(0), 0, level_cap};
    const Spectrum s = Spectrum::covering(q, z, level_cap);
    return {s.riesz(gamma, z), static_cast<long>(s.levels_at_or_below(z)), level_cap};
}

template BruteForce<double> riesz_mean_detailed(const SpectrumQuery&, int, const double&, long);
template BruteForce<Rational> riesz_mean_detailed(const SpectrumQuery&, int, const Rational&, long);

template <Scalar T>
T riesz1_closed_sphere(int d, const T& z) {
    if (z < 0) throw std::domain_error("riesz1_closed_sphere needs z >= 0");
    const long L = *max_level_index(Space::sphere(d), z);
    // (2L+d) Gamma(L+d) / (Gamma(L+1) Gamma(d+1)) = (2L+d) C(L+d-1, d-1) / d
    const Rational k(Integer((2 * L + d) * binomial(L + d - 1, d - 1)), Integer(d * (d + 2)));
    const Integer shift = Integer(d) * L * (L + d);
    if constexpr (std::same_as<T, double>)
        return to_double(k) * ((d + 2) * z - to_double(shift));
    else
        return k * (Rational(d + 2) * z - Rational(shift));
}

template double riesz1_closed_sphere(int, const double&);
template Rational riesz1_closed_sphere(int, const Rational&);

namespace {

template <class Z>
Integer counting_closed_hemisphere_impl(const Space& h, const Z& z) {
    if (!h.is_hemisphere()) throw std::invalid_argument("closed counting form needs a hemisphere");
    const long d = h.dim();
    const auto L = max_level_index(h, z);
    if (!L) return 0;
    if (h.family() == Family::HemisphereDirichlet) return binomial(*L + d - 1, d);
    return binomial(*L + d, d);
}

}  // namespace

Integer counting_closed_hemisphere(const Space& h, double z) {
    if (z < 0) return 0;
    return counting_closed_hemisphere_impl(h, z);
}

Integer counting_closed_hemisphere(const Space& h, const Rational& z) {
    if (z < 0) return 0;
    return counting_closed_hemisphere_impl(h, z);
}

template <Scalar T>
T lemma_sum(int p, const T& z) {
    if (p < 1) throw std::domain_error("lemma_sum needs p >= 1");
    T acc(0);
    for (long l = 1;; ++l) {
        const Integer lam = boost::multiprecision::pow(Integer(l) * (l + 1), static_cast<unsigned>(p));
        if (compare(lam, z) > 0) break;
        acc += T(2 * l + 1) * (z - from_integer<T>(lam));
    }
    return acc;
}

template double lemma_sum(int, const double&);
template Rational lemma_sum(int, const Rational&);

template <Scalar T>
TransformCheck<T> poly_transform_check(int d, int p, const T& z) {
    if (p < 2) throw std::domain_error("transform identities need p >= 2");
    if (z < 0) throw std::domain_error("transform identities need z >= 0");
    const Spectrum s = Spectrum::covering(SpectrumQuery(Space::sphere(d)), z);
    const auto lv = s.levels();
    const std::size_t n = s.levels_at_or_below(z);

    T lhs(0), int_r1(0), int_n(0);
    T count(0), first_moment(0);  // N and sum of m*lambda on the current piece
    const T zp = ipow(z, p);
    for (std::size_t k = 0; k < n; ++k) {
        const T lam = from_integer<T>(lv[k].lambda);
        const T m = from_integer<T>(lv[k].mult);
        lhs += m * (zp - ipow(lam, p));
        count += m;
        first_moment += m * lam;
        const T a = lam;
        const T b = k + 1 < n ? from_integer<T>(lv[k + 1].lambda) : z;
        // on [a, b]: N = count, R_1(s) = count*s - first_moment
        const T dp = ipow(b, p) - ipow(a, p);
        const T dp1 = ipow(b, p - 1) - ipow(a, p - 1);
        int_r1 += count * dp / T(p) - first_moment * dp1 / T(p - 1);
        int_n += count * dp / T(p);
    }
    const T r1z = count * z - first_moment;
    const T rhs1 = -T(p) * T(p - 1) * int_r1 + T(p) * ipow(z, p - 1) * r1z;
    const T rhs2 = T(p) * int_n;
    const double scale = std::max(1.0, std::fabs(to_double(lhs)));
    const double res =
        std::max(std::fabs(to_double(T(lhs - rhs1))), std::fabs(to_double(T(lhs - rhs2)))) / scale;
    return {lhs, rhs1, rhs2, res};
}

template TransformCheck<double> poly_transform_check(int, int, const double&);
template TransformCheck<Rational> poly_transform_check(int, int, const Rational&);

PrefixSums prefix_sums(const SpectrumQuery& q, long k) {
    if (k < 1) throw std::domain_error("prefix sums need k >= 1");
    return Spectrum::with_count(q, Integer(k)).prefix(Integer(k));
}

Rational eigenvalue_average(const SpectrumQuery& q, long k) {
    const PrefixSums ps = prefix_sums(q, k);
    return Rational(ps.sum1, Integer(k));
}

}  // namespace spectral
