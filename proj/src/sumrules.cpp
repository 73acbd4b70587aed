#include "spectral/sumrules.hpp"

#include "spectral/riesz.hpp"
#include "spectral/weyl.hpp"

#include <cmath>
#include <stdexcept>

namespace spectral {

namespace {

void require_closed(const Space& space) {
    if (!space.is_closed())
        throw std::invalid_argument("sum rules are stated on closed spaces, not on " + to_descriptor(space));
}

QuadPoly make_p(int d, const Integer& n, const Integer& s1, const Integer& s2, const Integer& lambda) {
    const Rational N(n), S1(s1), S2(s2), lam(lambda);
    return {N, Rational(-Rational(2 * (d + 2), d) * S1 - lam * N), Rational(Rational(d + 4, d) * S2 + lam * S1)};
}

QuadPoly make_q(const Integer& n, const Integer& a, const Integer& b) {
    const Rational N(n);
    return {N, Rational(-N * Rational(a + b)), Rational(N * Rational(a * b))};
}

// lambda_k, 1-based, multiplicities counted
Integer eigenvalue_at(const Spectrum& s, const Integer& k) {
    Integer seen = 0;
    for (const auto& lv : s.levels()) {
        seen += lv.mult;
        if (seen >= k) return lv.lambda;
    }
    throw std::logic_error("spectrum table too short");
}

}  // namespace

std::string to_string(const QuadPoly& p) {
    auto term = [](const Rational& c) { return (c < 0 ? " - " : " + ") + to_string(Rational(abs(c))); };
    return to_string(p.c2) + " z^2" + term(p.c1) + " z" + term(p.c0);
}

QuadPoly pn(const Space& space, const Integer& n) {
    require_closed(space);
    if (n < 1) throw std::domain_error("P_N needs N >= 1");
    const Spectrum s = Spectrum::with_count(SpectrumQuery(space), n);
    const PrefixSums ps = s.prefix(n);
    return make_p(space.dim(), n, ps.sum1, ps.sum2, first_positive_eigenvalue(space));
}

QuadPoly qn(const Space& space, const Integer& n) {
    require_closed(space);
    if (n < 1) throw std::domain_error("Q_N needs N >= 1");
    const Spectrum s = Spectrum::with_count(SpectrumQuery(space), Integer(n + 1));
    return make_q(n, eigenvalue_at(s, n), eigenvalue_at(s, Integer(n + 1)));
}

PqReport check_pq_identity(const Space& space, long l_max) {
    require_closed(space);
    if (l_max < 1) throw std::domain_error("check_pq_identity needs L_max >= 1");
    PqReport rep{space, l_max, {}, {}, true};
    const int d = space.dim();
    const Integer lambda = first_positive_eigenvalue(space);
    Integer n = 0, s1 = 0, s2 = 0;
    EnergyLevel current = energy_level(space, 0);
    for (long L = 0; L <= l_max; ++L) {
        const EnergyLevel next = energy_level(space, L + 1);
        n += current.mult;
        s1 += current.mult * current.lambda;
        s2 += current.mult * current.lambda * current.lambda;
        const QuadPoly p = make_p(d, n, s1, s2, lambda);
        const QuadPoly q = make_q(n, current.lambda, next.lambda);
        rep.gap_indices.push_back(n);
        if (!(p == q)) {
            rep.mismatches.push_back({L, n, p, q});
            rep.pass = false;
        }
        current = next;
    }
    return rep;
}

double r2_shifted_ratio(const Space& space, double z, double b) {
    if (!(z >= 0) || !(b >= 0)) throw std::domain_error("r2_shifted_ratio needs z >= 0 and b >= 0");
    const double r2 = riesz_mean(SpectrumQuery(space), 2, z);
    if (r2 == 0) return 0.0;
    return r2 / std::pow(z + b, 2.0 + 0.5 * space.dim());
}

TraceSeries trace_identity_partial(const Space& space, long l_max) {
    require_closed(space);
    if (l_max < 0) throw std::domain_error("trace_identity_partial needs l_max >= 0");
    const int d = space.dim();
    const long double h = 0.5L * d;
    const long double shift = d * to_double(first_positive_eigenvalue(space)) / 4.0L;
    long double sum = 0, comp = 0, last = 0;
    Integer n = 0;
    EnergyLevel current = energy_level(space, 0);
    for (long l = 0; l <= l_max; ++l) {
        const EnergyLevel next = energy_level(space, l + 1);
        n += current.mult;
        const long double a = to_double(current.lambda), b = to_double(next.lambda);
        const long double ta = a + shift, tb = b + shift;
        const long double bracket =
            std::pow(tb, -h) - std::pow(ta, -h) + d / 4.0L * (std::pow(tb, -1 - h) + std::pow(ta, -1 - h)) * (b - a);
        last = static_cast<long double>(to_double(n)) * bracket;
        const long double t = sum + last;  // Neumaier
        comp += std::fabs(sum) >= std::fabs(last) ? (sum - t) + last : (last - t) + sum;
        sum = t;
        current = next;
    }
    const double limit = lclass(0, d).value * volume(space).value();
    return {l_max, static_cast<double>(sum + comp), static_cast<double>(last),
            static_cast<double>(std::fabs(last) * (l_max + 1)), limit};
}

double circle_trace_remark_partial(long l_max) {
    long double sum = 0;
    for (long l = 0; l <= l_max; ++l) {
        const long double ra = l, rb = l + 1;
        const long double a = ra * ra, b = rb * rb;
        const long double ta = a + 0.25L, tb = b + 0.25L;
        sum += (2 * l + 1) / 8.0L * (rb - ra) * (rb - ra) * (rb - ra) * (a + b + 3 * ra * rb) /
               std::pow(ta * tb, 1.5L);
    }
    return static_cast<double>(sum);
}

ScanReport r2_bounds_check(const Space& space, std::vector<double> grid) {
    require_closed(space);
    BoundParams params;
    params.space = space;
    return verify("sd.r2.twosided", params, std::move(grid));
}

ScanReport r2_bounds_check(const Space& space) {
    require_closed(space);
    BoundParams params;
    params.space = space;
    return verify("sd.r2.twosided", params);
}

double r2_r1_defect(int d, double z) {
    const Spectrum s = Spectrum::covering(SpectrumQuery(Space::sphere(d)), z);
    return (d + 4) / 4.0 * s.riesz(2, z) - (z + d * d / 4.0) * s.riesz(1, z);
}

double biharmonic_margin(int d, double z) {
    const Spectrum s = Spectrum::covering(SpectrumQuery(Space::sphere(d)), z);
    const Spectrum sq = Spectrum::covering(SpectrumQuery(Space::sphere(d), 2), z * z);
    return sq.riesz(1, z * z) - ((2.0 * d + 4) * z - d * d) / (d + 4) * s.riesz(1, z);
}

GapMinimum gap_minimum(int d, long L) {
    if (L < 0) throw std::domain_error("gap_minimum needs L >= 0");
    const Space sphere = Space::sphere(d);
    const Rational z0 = Rational(L) * (L + d);
    Integer n = 0;
    for (long l = 0; l <= L; ++l) n += energy_level(sphere, l).mult;
    const Rational value = qn(sphere, n)(z0) + d * riesz_mean(SpectrumQuery(sphere), 1, z0);
    return {L, n, z0, value, Rational(Rational(n) * Rational(d - 2, d + 2) * z0)};
}

}  // namespace spectral
