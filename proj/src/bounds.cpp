#include "spectral/bounds.hpp"

#include "spectral/parallel.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spectral {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_level(int d, long l) { return static_cast<double>(l) * static_cast<double>(l + d - 1); }

// L^class_{1,d} |S^d| = 4/((d+2) d!)
double w1_sphere(int d) { return to_double(weyl_term(Space::sphere(d), Quantity::R1).coefficient); }
Rational w1_sphere_exact(int d) { return weyl_term(Space::sphere(d), Quantity::R1).coefficient; }
double w1_hemisphere(int d) { return 0.5 * w1_sphere(d); }
// L^class_{1,d,p} |S^d|
double wp_sphere(int d, int p) { return lclass(1, d, p).value * volume(Space::sphere(d)).value(); }

double sphere_volume(int d) { return volume(Space::sphere(d)).value(); }

Rational rpow(const Rational& x, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

std::vector<double> level_points(int d, long from, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (long l = from; out.size() < n; ++l) out.push_back(sphere_level(d, l));
    return out;
}

std::vector<double> upper_touch_points_s2(std::size_t n) {
    std::vector<double> out;
    for (long l = 0; out.size() < n; ++l) out.push_back((l + 1.0) * (l + 1.0) - 0.5);
    return out;
}

// Points of the circle where the shifted bound is attained: psi(w) = w - sqrt(w^2 + 1/12).
std::vector<double> circle_touch_points(std::size_t n) {
    std::vector<double> out;
    for (long l = 0; out.size() < n; ++l) {
        const double target = l + 0.5;
        auto g = [target](double w) { return std::sqrt(w * w + 1.0 / 12.0) - target; };
        std::uintmax_t iters = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(
            g, static_cast<double>(l), l + 1.0,
            [](double lo, double hi) { return std::fabs(hi - lo) <= 1e-13 * std::max(1.0, hi); }, iters);
        const double w = 0.5 * (a + b);
        out.push_back(w * w);
    }
    return out;
}

BoundSpec base(std::string id, std::string statement, std::string target, Quantity q, bool lower, bool upper) {
    BoundSpec s;
    s.id = std::move(id);
    s.statement = std::move(statement);
    s.target_description = std::move(target);
    s.quantity = q;
    s.has_lower = lower;
    s.has_upper = upper;
    s.expected_valid = true;
    s.d_min = s.d_max = s.d_default = 2;
    s.p_min = s.p_max = s.p_default = 1;
    s.uses_area = false;
    s.uses_space = false;
    s.needs_both_violations = false;
    return s;
}

void set_dims(BoundSpec& s, int lo, int hi, int def) {
    s.d_min = lo;
    s.d_max = hi;
    s.d_default = def;
}

void set_powers(BoundSpec& s, int lo, int hi, int def) {
    s.p_min = lo;
    s.p_max = hi;
    s.p_default = def;
}

SpectrumQuery sphere_query(const ResolvedParams& r) { return SpectrumQuery(Space::sphere(r.d)); }

std::vector<BoundSpec> build_catalog() {
    std::vector<BoundSpec> c;
    const auto s2 = [](const ResolvedParams&) { return SpectrumQuery(Space::sphere(2)); };
    const auto hemi_d = [](const ResolvedParams& r) { return SpectrumQuery(Space::hemisphere_dirichlet(r.d)); };
    const auto hemi_n = [](const ResolvedParams& r) { return SpectrumQuery(Space::hemisphere_neumann(r.d)); };
    const auto buckling_s2 = [](const ResolvedParams& r) {
        return SpectrumQuery(Space::sphere(2), r.p, Variant::Buckling);
    };
    const auto psi2 = [](double z) { return phase_at(2, z).psi; };

    {
        auto s = base("s2.r1.lower", "R1(z) >= z^2/2", "R1 on sphere:2", Quantity::R1, true, false);
        s.target_query = s2;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 0.5 * z * z; };
        s.evaluate_exact = [](const ResolvedParams&, Side, const Rational& z) -> std::optional<Rational> {
            return Rational(z * z / 2);
        };
        s.power_form = [](const ResolvedParams&, Side) -> std::optional<PowerForm> { return PowerForm{0.5, 0.0, 2.0}; };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 0, n); };
        s.equality_sides = {Side::Lower};
        c.push_back(std::move(s));
    }
    {
        auto s = base("s2.r1.upper", "R1(z) <= (z+1/2)^2/2", "R1 on sphere:2", Quantity::R1, false, true);
        s.target_query = s2;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 0.5 * (z + 0.5) * (z + 0.5); };
        s.evaluate_exact = [](const ResolvedParams&, Side, const Rational& z) -> std::optional<Rational> {
            const Rational t = z + Rational(1, 2);
            return Rational(t * t / 2);
        };
        s.power_form = [](const ResolvedParams&, Side) -> std::optional<PowerForm> { return PowerForm{0.5, 0.5, 2.0}; };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return upper_touch_points_s2(n); };
        s.equality_sides = {Side::Upper};
        c.push_back(std::move(s));
    }
    {
        auto s = base("s2.r1.lower.imp", "R1(z) >= z^2/2 + 2(1/4-psi^2)(z - sqrt(z)/2)", "R1 on sphere:2",
                      Quantity::R1, true, false);
        s.target_query = s2;
        s.evaluate = [psi2](const ResolvedParams&, Side, double z) {
            const double psi = psi2(z);
            return 0.5 * z * z + 2.0 * (0.25 - psi * psi) * (z - 0.5 * std::sqrt(z));
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 0, n); };
        s.equality_sides = {Side::Lower};
        c.push_back(std::move(s));
    }
    {
        auto s = base("s2.r1.upper.imp", "R1(z) <= z^2/2 + 2(1/4-psi^2)(z + sqrt(z)/2 + 1/2)", "R1 on sphere:2",
                      Quantity::R1, false, true);
        s.target_query = s2;
        s.evaluate = [psi2](const ResolvedParams&, Side, double z) {
            const double psi = psi2(z);
            return 0.5 * z * z + 2.0 * (0.25 - psi * psi) * (z + 0.5 * std::sqrt(z) + 0.5);
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 0, n); };
        s.equality_sides = {Side::Upper};
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.nd.polya", "N^D(z) <= z/2", "N on hemisphere-d:2", Quantity::N, false, true);
        s.target_query = hemi_d;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 0.5 * z; };
        s.evaluate_exact = [](const ResolvedParams&, Side, const Rational& z) -> std::optional<Rational> {
            return Rational(z / 2);
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 0, n); };
        s.equality_sides = {Side::Upper};
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.nd.twosided",
                      "(z/2)(1-(psi+1/2)z^{-1/2})^2 - (psi+1/2)z^{-1/2}/8 <= N^D(z) <= (z/2)(1-(psi+1/2)z^{-1/2})^2",
                      "N on hemisphere-d:2", Quantity::N, true, true);
        s.target_query = hemi_d;
        s.evaluate = [psi2](const ResolvedParams&, Side side, double z) {
            if (z <= 0) return 0.0;
            const double a = psi2(z) + 0.5;
            const double rz = std::sqrt(z);
            const double upper = 0.5 * (rz - a) * (rz - a);
            return side == Side::Upper ? upper : upper - a / (8.0 * rz);
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 0, n); };
        s.equality_sides = {Side::Lower, Side::Upper};
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.r1d.lower", "R1^D(z) >= z^2/4 - (1/3) z sqrt(z+1/4)", "R1 on hemisphere-d:2",
                      Quantity::R1, true, false);
        s.target_query = hemi_d;
        s.evaluate = [](const ResolvedParams&, Side, double z) {
            return 0.25 * z * z - z * std::sqrt(z + 0.25) / 3.0;
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 1, n); };
        s.equality_sides = {Side::Lower};
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.r1d.upper", "R1^D(z) <= z^2/4 - (1/3) z sqrt(z+1/4) + z/4", "R1 on hemisphere-d:2",
                      Quantity::R1, false, true);
        s.target_query = hemi_d;
        s.evaluate = [](const ResolvedParams&, Side, double z) {
            return 0.25 * z * z - z * std::sqrt(z + 0.25) / 3.0 + 0.25 * z;
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.r1n.lower", "R1^N(z) >= z^2/4 + (1/3) z sqrt(z+1/4)", "R1 on hemisphere-n:2",
                      Quantity::R1, true, false);
        s.target_query = hemi_n;
        s.evaluate = [](const ResolvedParams&, Side, double z) {
            return 0.25 * z * z + z * std::sqrt(z + 0.25) / 3.0;
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return level_points(2, 0, n); };
        s.equality_sides = {Side::Lower};
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.r1n.upper", "R1^N(z) <= z^2/4 + (1/3) z sqrt(z+1/4) + z", "R1 on hemisphere-n:2",
                      Quantity::R1, false, true);
        s.target_query = hemi_n;
        s.evaluate = [](const ResolvedParams&, Side, double z) {
            return 0.25 * z * z + z * std::sqrt(z + 0.25) / 3.0 + z;
        };
        c.push_back(std::move(s));
    }

    // Domains of the upper hemisphere: every R1^D(Omega) is dominated by
    // |Omega|/(4pi) sum_{l>=1} (2l+1)(z - l^p(l+1)^p)_+, which is the target.
    const auto half_s2 = [](const ResolvedParams&) { return 2.0 * kPi; };
    const auto full_s2 = [](const ResolvedParams&) { return 4.0 * kPi; };
    {
        auto s = base("dom.s2p.bly", "R1^D(Omega) <= |Omega| z^2/(8pi)",
                      "|Omega|/(4pi) sum_{l>=1}(2l+1)(z-l(l+1))_+", Quantity::R1, false, true);
        s.uses_area = true;
        s.max_area = half_s2;
        s.reference_area = full_s2;
        s.target_query = buckling_s2;
        s.evaluate = [](const ResolvedParams& r, Side, double z) { return r.area * z * z / (8.0 * kPi); };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{r.area / (8.0 * kPi), 0.0, 2.0};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("dom.s2p.bly.imp", "R1^D(Omega) <= |Omega| (z-1/2)^2/(8pi)",
                      "|Omega|/(4pi) sum_{l>=1}(2l+1)(z-l(l+1))_+", Quantity::R1, false, true);
        s.uses_area = true;
        s.max_area = half_s2;
        s.reference_area = full_s2;
        s.target_query = buckling_s2;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return r.area * (z - 0.5) * (z - 0.5) / (8.0 * kPi);
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{r.area / (8.0 * kPi), -0.5, 2.0};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("lem.blys1", "sum_{l>=1}(2l+1)(z-l(l+1))_+ <= z^2/2", "sum_{l>=1}(2l+1)(z-l(l+1))_+",
                      Quantity::R1, false, true);
        s.target_query = buckling_s2;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 0.5 * z * z; };
        s.evaluate_exact = [](const ResolvedParams&, Side, const Rational& z) -> std::optional<Rational> {
            return Rational(z * z / 2);
        };
        s.power_form = [](const ResolvedParams&, Side) -> std::optional<PowerForm> { return PowerForm{0.5, 0.0, 2.0}; };
        c.push_back(std::move(s));
    }
    {
        auto s = base("lem.blys2", "sum_{l>=1}(2l+1)(z-l(l+1))_+ <= (z-1/2)^2/2", "sum_{l>=1}(2l+1)(z-l(l+1))_+",
                      Quantity::R1, false, true);
        s.target_query = buckling_s2;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 0.5 * (z - 0.5) * (z - 0.5); };
        s.evaluate_exact = [](const ResolvedParams&, Side, const Rational& z) -> std::optional<Rational> {
            const Rational t = z - Rational(1, 2);
            return Rational(t * t / 2);
        };
        s.power_form = [](const ResolvedParams&, Side) -> std::optional<PowerForm> {
            return PowerForm{0.5, -0.5, 2.0};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.r1.lower", "R1(z) >= L_{1,d}|S^d| z^{1+d/2}", "R1 on sphere:d", Quantity::R1, true, false);
        set_dims(s, 2, 16, 2);
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side, double z) { return w1_sphere(r.d) * std::pow(z, 1.0 + 0.5 * r.d); };
        s.evaluate_exact = [](const ResolvedParams& r, Side, const Rational& z) -> std::optional<Rational> {
            if (r.d % 2 != 0) return std::nullopt;
            return Rational(w1_sphere_exact(r.d) * rpow(z, 1 + r.d / 2));
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{w1_sphere(r.d), 0.0, 1.0 + 0.5 * r.d};
        };
        s.equality_points = [](const ResolvedParams& r, std::size_t n) {
            if (r.d != 2) throw std::domain_error("sd.r1.lower records equality points only for d=2");
            return level_points(2, 0, n);
        };
        s.equality_sides = {Side::Lower};
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.r1.lower.shift", "R1(z) >= L_{1,d}|S^d| z^{1+d/2} (1 + d(d-2)(d+2)/(12z))", "R1 on sphere:d",
                      Quantity::R1, true, false);
        set_dims(s, 2, 16, 3);
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            const double d = r.d;
            return w1_sphere(r.d) * std::pow(z, 0.5 * d) * (z + d * (d - 2) * (d + 2) / 12.0);
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.r1.upper.shift", "R1(z) <= L_{1,d}|S^d| (z + z_d)^{1+d/2}, z_d = (2d-1)d/12",
                      "R1 on sphere:d", Quantity::R1, false, true);
        set_dims(s, 1, 16, 2);
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return w1_sphere(r.d) * std::pow(z + shift_zd(r.d), 1.0 + 0.5 * r.d);
        };
        s.evaluate_exact = [](const ResolvedParams& r, Side, const Rational& z) -> std::optional<Rational> {
            if (r.d % 2 != 0) return std::nullopt;
            return Rational(w1_sphere_exact(r.d) * rpow(z + Rational((2 * r.d - 1) * r.d, 12), 1 + r.d / 2));
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{w1_sphere(r.d), shift_zd(r.d), 1.0 + 0.5 * r.d};
        };
        s.equality_points = [](const ResolvedParams& r, std::size_t n) {
            if (r.d == 1) return circle_touch_points(n);
            if (r.d == 2) return upper_touch_points_s2(n);
            throw std::domain_error("sd.r1.upper.shift is attained only asymptotically for d >= 3; see optimal_shift");
        };
        s.equality_sides = {Side::Upper};
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.avg.twosided",
                      "d/(d+2) 4pi^2/omega_d^{2/d} (k/|S^d|)^{2/d} - z_d <= (1/k) sum lambda_j <= d/(d+2) 4pi^2/omega_d^{2/d} (k/|S^d|)^{2/d}",
                      "average of the first k eigenvalues on sphere:d", Quantity::Average, true, true);
        set_dims(s, 2, 16, 2);
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side side, double k) {
            const double d = r.d;
            const double omega = volumes(r.d).unit_ball.value();
            const double y = 4.0 * kPi * kPi / std::pow(omega, 2.0 / d) * std::pow(k / sphere_volume(r.d), 2.0 / d);
            return d / (d + 2) * y - (side == Side::Lower ? shift_zd(r.d) : 0.0);
        };
        s.equality_points = [](const ResolvedParams& r, std::size_t n) {
            if (r.d != 2 || n == 0) throw std::domain_error("sd.avg.twosided records equality only at d=2, k=1");
            return std::vector<double>{1.0};
        };
        s.equality_sides = {Side::Lower};
        c.push_back(std::move(s));
    }

    // Domains of S^d: R1^D(Omega) <= |Omega|/|S^d| R1(S^d) <= R1^N(Omega).
    const auto sd_area = [](const ResolvedParams& r) { return sphere_volume(r.d); };
    {
        auto s = base("dom.sd.bly.shift", "R1^D(Omega) <= L_{1,d}|Omega| (z + z_d)^{1+d/2}", "|Omega|/|S^d| R1(S^d)",
                      Quantity::R1, false, true);
        set_dims(s, 2, 16, 2);
        s.uses_area = true;
        s.max_area = sd_area;
        s.reference_area = sd_area;
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return lclass(1, r.d).value * r.area * std::pow(z + shift_zd(r.d), 1.0 + 0.5 * r.d);
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{lclass(1, r.d).value * r.area, shift_zd(r.d), 1.0 + 0.5 * r.d};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("dom.sd.kroger.imp", "R1^N(Omega) >= L_{1,d}|Omega| z^{1+d/2} (1 + d(d-2)(d+2)/(12z))",
                      "|Omega|/|S^d| R1(S^d)", Quantity::R1, true, false);
        set_dims(s, 2, 16, 3);
        s.uses_area = true;
        s.max_area = sd_area;
        s.reference_area = sd_area;
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            const double d = r.d;
            return lclass(1, r.d).value * r.area * std::pow(z, 0.5 * d) * (z + d * (d - 2) * (d + 2) / 12.0);
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("s1.r1.upper.shift", "R1(z) <= (4/3)(z + 1/12)^{3/2} on the circle", "R1 on sphere:1",
                      Quantity::R1, false, true);
        set_dims(s, 1, 1, 1);
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 4.0 / 3.0 * std::pow(z + 1.0 / 12.0, 1.5); };
        s.power_form = [](const ResolvedParams&, Side) -> std::optional<PowerForm> {
            return PowerForm{4.0 / 3.0, 1.0 / 12.0, 1.5};
        };
        s.equality_points = [](const ResolvedParams&, std::size_t n) { return circle_touch_points(n); };
        s.equality_sides = {Side::Upper};
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi.d.bly345", "R1^D(z) <= L_{1,d}|S^d_+| z^{1+d/2} for d = 3, 4, 5", "R1 on hemisphere-d:d",
                      Quantity::R1, false, true);
        set_dims(s, 3, 5, 3);
        s.target_query = hemi_d;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return w1_hemisphere(r.d) * std::pow(z, 1.0 + 0.5 * r.d);
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{w1_hemisphere(r.d), 0.0, 1.0 + 0.5 * r.d};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.r1p.twosided",
                      "two-sided bounds for R1 of (-Delta)^p on S^d around L_{1,d,p}|S^d| z^{1+d/(2p)}",
                      "R1 of (-Delta)^p on sphere:d", Quantity::R1, true, true);
        set_dims(s, 2, 16, 2);
        set_powers(s, 2, 6, 2);
        s.target_query = [](const ResolvedParams& r) { return SpectrumQuery(Space::sphere(r.d), r.p); };
        s.evaluate = [](const ResolvedParams& r, Side side, double z) {
            const double d = r.d, p = r.p;
            if (r.d == 2) {  // sharper closed form in two dimensions
                const double lead = p / (p + 1) * std::pow(z, 1.0 + 1.0 / p);
                const double tail = p / 8.0 * std::pow(z, 1.0 - 1.0 / p);
                return side == Side::Lower ? lead - (p - 1) / 2.0 * z - tail : lead + p / 2.0 * z + tail;
            }
            const double w = wp_sphere(r.d, r.p);
            const double y = std::pow(z, 1.0 / p) + shift_zd(r.d);
            const double weyl = std::pow(z, 1.0 + d / (2 * p));
            const double corr = 2 * (p - 1) / (d + 2) * w * (std::pow(y, 0.5 * d + p) - weyl);
            return side == Side::Lower ? w * weyl - corr : w * std::pow(y, 0.5 * d + p) + corr;
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.r12.lower", "R1 of Delta^2 on S^d >= 8/((d+4) d!) z^{1+d/4}", "R1 of (-Delta)^2 on sphere:d",
                      Quantity::R1, true, false);
        set_dims(s, 3, 16, 3);
        s.target_query = [](const ResolvedParams& r) { return SpectrumQuery(Space::sphere(r.d), 2); };
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return 8.0 / ((r.d + 4) * to_double(factorial(r.d))) * std::pow(z, 1.0 + 0.25 * r.d);
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{8.0 / ((r.d + 4) * to_double(factorial(r.d))), 0.0, 1.0 + 0.25 * r.d};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("hemi2.poly.bly", "R1 of (-Delta)^p on S^2_+ (Dirichlet) <= p/(2(p+1)) z^{1+1/p}",
                      "sum (z - lambda_j^p)_+ over hemisphere-d:2", Quantity::R1, false, true);
        set_powers(s, 1, 6, 2);
        s.target_query = [](const ResolvedParams& r) { return SpectrumQuery(Space::hemisphere_dirichlet(2), r.p); };
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            const double p = r.p;
            return p / (2 * (p + 1)) * std::pow(z, 1.0 + 1.0 / p);
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            const double p = r.p;
            return PowerForm{p / (2 * (p + 1)), 0.0, 1.0 + 1.0 / p};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("dom.s2p.poly23", "R1^{p,D}(Omega) <= |Omega| z^{3/2}/(6pi) (p=2), 3|Omega| z^{4/3}/(16pi) (p=3)",
                      "|Omega|/(4pi) sum_{l>=1}(2l+1)(z-l^p(l+1)^p)_+", Quantity::R1, false, true);
        set_powers(s, 2, 3, 2);
        s.uses_area = true;
        s.max_area = half_s2;
        s.reference_area = full_s2;
        s.target_query = buckling_s2;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return r.p == 2 ? r.area * std::pow(z, 1.5) / (6.0 * kPi) : 3.0 * r.area * std::pow(z, 4.0 / 3.0) / (16.0 * kPi);
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("dom.s2.buckling", "R1 of the buckling problem on Omega <= |Omega| (z-1/2)^2/(8pi)",
                      "|Omega|/(4pi) R1 of the buckling spectrum of sphere:2", Quantity::R1, false, true);
        s.uses_area = true;
        s.max_area = full_s2;
        s.reference_area = full_s2;
        s.target_query = buckling_s2;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return r.area * (z - 0.5) * (z - 0.5) / (8.0 * kPi);
        };
        s.power_form = [](const ResolvedParams& r, Side) -> std::optional<PowerForm> {
            return PowerForm{r.area / (8.0 * kPi), -0.5, 2.0};
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("dom.sd.neubih.lower", "R1^{2,N}(Omega) >= L_{1,d,2}|Omega| z^{1+d/4}",
                      "|Omega|/|S^d| R1 of (-Delta)^2 on sphere:d", Quantity::R1, true, false);
        set_dims(s, 3, 16, 3);
        s.uses_area = true;
        s.max_area = sd_area;
        s.reference_area = sd_area;
        s.target_query = [](const ResolvedParams& r) { return SpectrumQuery(Space::sphere(r.d), 2); };
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return lclass(1, r.d, 2).value * r.area * std::pow(z, 1.0 + 0.25 * r.d);
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("sd.r2.twosided", "L_{2,d}|M| z^{2+d/2} <= R2(z) <= L_{2,d}|M| (z + d lambda/4)^{2+d/2}",
                      "R2 on a closed space", Quantity::R2, true, true);
        set_dims(s, 1, 16, 2);
        s.uses_space = true;
        s.target_query = [](const ResolvedParams& r) { return SpectrumQuery(r.space); };
        s.known_failure = [](const ResolvedParams& r) -> std::optional<std::string> {
            if (r.space == Space::sphere(1))
                return "lower side fails on the circle: R2(z) z^{-5/2} is increasing across the first gap";
            if (r.space == Space(Family::RealProjective, 2))
                return "lower side fails on rp:2: R2(6) = 36 equals the Weyl term and drops below it right after";
            return std::nullopt;
        };
        s.evaluate = [](const ResolvedParams& r, Side side, double z) {
            const double w = to_double(weyl_term(r.space, Quantity::R2).coefficient);
            const double e = 2.0 + 0.5 * r.d;
            if (side == Side::Lower) return w * std::pow(z, e);
            const double shift = r.d * to_double(first_positive_eigenvalue(r.space)) / 4.0;
            return w * std::pow(z + shift, e);
        };
        c.push_back(std::move(s));
    }

    // Documented failures.
    {
        auto s = base("fail.hemi.polya.d>=3", "N^D(z) <= z^{d/2}/d! on S^d_+ (fails for d >= 3)", "N on hemisphere-d:d",
                      Quantity::N, false, true);
        set_dims(s, 3, 16, 3);
        s.expected_valid = false;
        s.target_query = hemi_d;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            return std::pow(z, 0.5 * r.d) / to_double(factorial(r.d));
        };
        s.witness_points = [](const ResolvedParams& r, double) { return std::vector<double>{double(r.d)}; };
        c.push_back(std::move(s));
    }
    {
        auto s = base("fail.liyau.d>=6", "(1/k) sum lambda_j >= d/(d+2) (d!)^{2/d} k^{2/d} on S^d_+ (fails for d >= 6)",
                      "average of the first k Dirichlet eigenvalues on hemisphere-d:d", Quantity::Average, true, false);
        set_dims(s, 6, 16, 6);
        s.expected_valid = false;
        s.target_query = hemi_d;
        s.evaluate = [](const ResolvedParams& r, Side, double k) {
            const double d = r.d;
            return d / (d + 2) * std::pow(to_double(factorial(r.d)), 2.0 / d) * std::pow(k, 2.0 / d);
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("fail.r1p.weyl", "R1 of (-Delta)^2 on S^2 versus (2/3) z^{3/2}: neither bound holds",
                      "R1 of (-Delta)^2 on sphere:2", Quantity::R1, true, true);
        set_powers(s, 2, 2, 2);
        s.expected_valid = false;
        s.needs_both_violations = true;
        s.target_query = [](const ResolvedParams&) { return SpectrumQuery(Space::sphere(2), 2); };
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 2.0 / 3.0 * std::pow(z, 1.5); };
        s.witness_points = [](const ResolvedParams&, double z_max) {
            std::vector<double> out;
            for (long l = 1;; ++l) {
                const double below = double(l) * l * (l + 1.0) * (l + 1.0);
                const double above = (1.0 + l) * (1.0 + l) * (2.0 + l * (2.0 + l));
                if (below > z_max) break;
                out.push_back(below);
                if (above <= z_max) out.push_back(above);
            }
            return out;
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("fail.s1.weyl", "R1 on the circle versus (4/3) z^{3/2}: neither bound holds", "R1 on sphere:1",
                      Quantity::R1, true, true);
        set_dims(s, 1, 1, 1);
        s.expected_valid = false;
        s.needs_both_violations = true;
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams&, Side, double z) { return 4.0 / 3.0 * std::pow(z, 1.5); };
        s.witness_points = [](const ResolvedParams&, double z_max) {
            std::vector<double> out;
            const double delta = std::sqrt(3.0) / 6.0;
            for (long l = 0;; ++l) {
                const double lo = l + 0.5 - delta, hi = l + 0.5 + delta;
                if (lo * lo > z_max) break;
                out.push_back(lo * lo);
                if (hi * hi <= z_max) out.push_back(hi * hi);
            }
            return out;
        };
        c.push_back(std::move(s));
    }
    {
        auto s = base("fail.sd.r1.lower.bd", "R1(z) >= L_{1,d}|S^d| (z + d(d-2)/6)^{1+d/2} (fails for d = 3)",
                      "R1 on sphere:d", Quantity::R1, true, false);
        set_dims(s, 3, 3, 3);
        s.expected_valid = false;
        s.target_query = sphere_query;
        s.evaluate = [](const ResolvedParams& r, Side, double z) {
            const double d = r.d;
            return w1_sphere(r.d) * std::pow(z + d * (d - 2) / 6.0, 1.0 + 0.5 * d);
        };
        c.push_back(std::move(s));
    }
    return c;
}

std::string describe(const BoundSpec& spec, const ResolvedParams& r) {
    std::ostringstream os;
    os.precision(17);
    if (spec.uses_space)
        os << "space=" << to_descriptor(r.space);
    else
        os << "d=" << r.d;
    if (spec.p_min != spec.p_max || spec.p_default != 1) os << " p=" << r.p;
    if (spec.uses_area) os << " area=" << r.area;
    return os.str();
}

Side pick_side(const BoundSpec& spec, std::optional<Side> side) {
    if (side) {
        if ((*side == Side::Lower && !spec.has_lower) || (*side == Side::Upper && !spec.has_upper))
            throw std::invalid_argument(spec.id + " has no " + std::string(side_name(*side)) + " side");
        return *side;
    }
    if (spec.has_lower && spec.has_upper)
        throw std::invalid_argument(spec.id + " is two-sided; choose the lower or upper side");
    return spec.has_lower ? Side::Lower : Side::Upper;
}

double area_scale(const BoundSpec& spec, const ResolvedParams& r) {
    return spec.uses_area ? r.area / spec.reference_area(r) : 1.0;
}

// Target evaluator backed by a level table built once for the whole grid.
class TargetEvaluator {
public:
    TargetEvaluator(const BoundSpec& spec, const ResolvedParams& r, double x_max)
        : quantity_(spec.quantity),
          scale_(area_scale(spec, r)),
          spectrum_(spec.quantity == Quantity::Average
                        ? Spectrum::with_count(spec.target_query(r), Integer(static_cast<long>(std::ceil(x_max))))
                        : Spectrum::covering(spec.target_query(r), x_max)) {}

    double operator()(double x) const {
        switch (quantity_) {
            case Quantity::N: return scale_ * to_double(spectrum_.counting(x));
            case Quantity::R1: return scale_ * spectrum_.riesz(1, x);
            case Quantity::R2: return scale_ * spectrum_.riesz(2, x);
            case Quantity::Average: {
                const long k = std::lround(x);
                return to_double(Rational(spectrum_.prefix(Integer(k)).sum1, Integer(k)));
            }
        }
        return 0.0;
    }

private:
    Quantity quantity_;
    double scale_;
    Spectrum spectrum_;
};

}  // namespace

std::string_view side_name(Side s) { return s == Side::Lower ? "lower" : "upper"; }

std::vector<Side> BoundSpec::sides() const {
    std::vector<Side> out;
    if (has_lower) out.push_back(Side::Lower);
    if (has_upper) out.push_back(Side::Upper);
    return out;
}

const std::vector<BoundSpec>& bound_catalog() {
    static const std::vector<BoundSpec> catalog = build_catalog();
    return catalog;
}

const BoundSpec& find_bound(std::string_view id) {
    for (const auto& s : bound_catalog())
        if (s.id == id) return s;
    // the catalog ids use ">=", accept the unicode form as well
    std::string alt(id);
    if (auto pos = alt.find("≥"); pos != std::string::npos) {
        alt.replace(pos, std::string("≥").size(), ">=");
        for (const auto& s : bound_catalog())
            if (s.id == alt) return s;
    }
    throw std::invalid_argument("unknown bound id '" + std::string(id) + "'");
}

ResolvedParams resolve(const BoundSpec& spec, const BoundParams& params) {
    ResolvedParams r{spec.d_default, spec.p_default, 0.0, Space::sphere(spec.d_default)};
    if (spec.uses_space) {
        r.space = params.space.value_or(Space::sphere(params.d.value_or(spec.d_default)));
        if (!r.space.is_closed()) throw std::invalid_argument(spec.id + " needs a closed space");
        r.d = r.space.dim();
    } else {
        r.d = params.d.value_or(params.space ? params.space->dim() : spec.d_default);
        if (r.d < spec.d_min || r.d > spec.d_max)
            throw std::invalid_argument(spec.id + " is stated for " + std::to_string(spec.d_min) + " <= d <= " +
                                        std::to_string(spec.d_max) + ", got d=" + std::to_string(r.d));
    }
    r.p = params.p.value_or(spec.p_default);
    if (r.p < spec.p_min || r.p > spec.p_max)
        throw std::invalid_argument(spec.id + " is stated for " + std::to_string(spec.p_min) + " <= p <= " +
                                    std::to_string(spec.p_max) + ", got p=" + std::to_string(r.p));
    if (spec.uses_area) {
        const double max_area = spec.max_area(r);
        r.area = params.area.value_or(max_area);
        if (!(r.area >= 0) || r.area > max_area * (1 + 1e-12))
            throw std::invalid_argument(spec.id + " needs 0 <= |Omega| <= " + std::to_string(max_area));
    } else if (params.area) {
        throw std::invalid_argument(spec.id + " takes no area parameter");
    }
    if (params.space && !spec.uses_space) {
        const Space expected = spec.target_query(r).space;
        if (!(expected == *params.space))
            throw std::invalid_argument(spec.id + " is stated on " + to_descriptor(expected) + ", not on " +
                                        to_descriptor(*params.space));
    }
    return r;
}

double bound_value(std::string_view id, const BoundParams& params, double x, std::optional<Side> side) {
    const BoundSpec& spec = find_bound(id);
    const ResolvedParams r = resolve(spec, params);
    if (!(x >= 0)) throw std::domain_error("bounds are evaluated at z >= 0");
    if (spec.quantity == Quantity::Average && (x < 1 || x != std::floor(x)))
        throw std::domain_error(spec.id + " is evaluated at integers k >= 1");
    return spec.evaluate(r, pick_side(spec, side), x);
}

std::optional<Rational> bound_value_exact(std::string_view id, const BoundParams& params, const Rational& z,
                                          std::optional<Side> side) {
    const BoundSpec& spec = find_bound(id);
    const ResolvedParams r = resolve(spec, params);
    if (z < 0) throw std::domain_error("bounds are evaluated at z >= 0");
    if (!spec.evaluate_exact) return std::nullopt;
    return spec.evaluate_exact(r, pick_side(spec, side), z);
}

std::vector<double> equality_points(std::string_view id, const BoundParams& params, std::size_t n) {
    const BoundSpec& spec = find_bound(id);
    const ResolvedParams r = resolve(spec, params);
    if (!spec.equality_points) throw std::domain_error(spec.id + " has no recorded equality points");
    return spec.equality_points(r, n);
}

double shift_zd(int d) { return (2.0 * d - 1.0) * d / 12.0; }

double optimal_shift(int d, long l) {
    if (d < 1 || l < 1) throw std::domain_error("optimal_shift needs d >= 1 and l >= 1");
    // (d+2l)(d+l-1)!/l! as an exact integer, then the real 2/d-th power
    const Integer k = Integer(d + 2 * l) * factorial(d + l - 1) / factorial(l);
    const double root = std::exp(2.0 / d * (std::log(to_double(k)) - std::log(4.0) / 2.0));
    return static_cast<double>(d) / (d + 2) * (root - static_cast<double>(l) * (l + d));
}

std::vector<double> standard_grid(std::string_view id, const BoundParams& params) {
    const BoundSpec& spec = find_bound(id);
    const ResolvedParams r = resolve(spec, params);
    std::vector<double> xs;
    if (spec.quantity == Quantity::Average) {
        for (long k = 1; k <= 500; ++k) xs.push_back(static_cast<double>(k));
        return xs;
    }
    const SpectrumQuery q = spec.target_query(r);
    const Spectrum levels = Spectrum::first_levels(q, kStandardGridLevel + 1);
    const double x_max = levels.levels().back().value_d;
    for (std::size_t i = 0; i < kStandardGridPoints; ++i)
        xs.push_back(x_max * static_cast<double>(i) / (kStandardGridPoints - 1));
    for (const auto& lv : levels.levels()) xs.push_back(lv.value_d);
    if (spec.equality_points) {
        try {
            for (double z : spec.equality_points(r, 4 * kStandardGridLevel))
                if (z <= x_max) xs.push_back(z);
        } catch (const std::domain_error&) {
        }
    }
    if (spec.witness_points)
        for (double z : spec.witness_points(r, x_max)) xs.push_back(z);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

ScanReport verify(std::string_view id, const BoundParams& params, double tolerance) {
    return verify(id, params, standard_grid(id, params), tolerance);
}

ScanReport verify(std::string_view id, const BoundParams& params, std::vector<double> grid, double tolerance) {
    if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
    const BoundSpec& spec = find_bound(id);
    const ResolvedParams r = resolve(spec, params);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    ScanReport rep;
    rep.id = spec.id;
    rep.params = describe(spec, r);
    rep.expected_valid = spec.expected_valid;
    if (spec.known_failure) {
        rep.known_failure = spec.known_failure(r);
        if (rep.known_failure) rep.expected_valid = false;
    }
    rep.n_points = grid.size();
    if (grid.empty()) return rep;
    if (!(grid.front() >= 0)) throw std::domain_error("verification grid must be nonnegative");

    const TargetEvaluator target(spec, r, grid.back());
    const std::vector<Side> sides = spec.sides();
    std::vector<ScanPoint> points(grid.size() * sides.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double x = grid[i];
        const double t = target(x);
        for (std::size_t s = 0; s < sides.size(); ++s) {
            const double b = spec.evaluate(r, sides[s], x);
            const double slack = sides[s] == Side::Lower ? t - b : b - t;
            points[i * sides.size() + s] = {x, sides[s], t, b, slack};
        }
    });

    rep.min_slack = points.front().slack;
    rep.argmin = points.front().x;
    for (const auto& pt : points) {
        // ties prefer z > 0, where the comparison is not trivially 0 vs 0
        if (pt.slack < rep.min_slack || (pt.slack == rep.min_slack && rep.argmin == 0 && pt.x > 0)) {
            rep.min_slack = pt.slack;
            rep.argmin = pt.x;
        }
        if (pt.bound < 0) ++rep.negative_bound_points;
        if (pt.slack < -tolerance * std::max(1.0, std::fabs(pt.bound))) {
            rep.violations.push_back(pt);
            (pt.side == Side::Lower ? rep.lower_violated : rep.upper_violated) = true;
        }
    }
    if (!rep.violations.empty()) rep.first_witness = rep.violations.front();

    if (spec.equality_points) {
        std::vector<double> eq;
        try {
            eq = spec.equality_points(r, 4 * kStandardGridLevel);
        } catch (const std::domain_error&) {
        }
        for (double x : eq) {
            if (x > grid.back()) continue;
            const double t = target(x);
            for (Side side : spec.equality_sides) {
                const double b = spec.evaluate(r, side, x);
                const double slack = side == Side::Lower ? t - b : b - t;
                rep.equality_checks.push_back(
                    {x, side, slack, std::fabs(slack) <= tolerance * std::max(1.0, std::fabs(b))});
            }
        }
    }

    if (rep.negative_bound_points > 0)
        rep.notes.push_back("bound is negative at " + std::to_string(rep.negative_bound_points) +
                            " grid points (evaluated unclamped)");
    if (spec.id == "fail.liyau.d>=6") {
        const Integer lhs = boost::multiprecision::pow(Integer(r.d + 2), static_cast<unsigned>(r.d));
        const Integer rhs = factorial(r.d) * factorial(r.d);
        rep.notes.push_back("k=1: (d+2)^d = " + to_string(lhs) + (lhs < rhs ? " < " : " >= ") + to_string(rhs) +
                            " = (d!)^2");
    }

    const bool equalities_ok =
        std::all_of(rep.equality_checks.begin(), rep.equality_checks.end(), [](const auto& e) { return e.ok; });
    if (rep.expected_valid)
        rep.pass = rep.violations.empty() && equalities_ok;
    else if (spec.needs_both_violations)
        rep.pass = rep.lower_violated && rep.upper_violated;
    else
        rep.pass = !rep.violations.empty();
    rep.points = std::move(points);
    return rep;
}

LegendreBound legendre_average_bound(std::string_view id, const BoundParams& params, long k,
                                     std::optional<Side> bound_side) {
    if (k < 1) throw std::domain_error("average bounds need k >= 1");
    const BoundSpec& spec = find_bound(id);
    if (spec.quantity != Quantity::R1) throw std::invalid_argument(spec.id + " does not bound a first Riesz mean");
    const ResolvedParams r = resolve(spec, params);
    const Side side = pick_side(spec, bound_side);
    const Side avg_side = side == Side::Upper ? Side::Lower : Side::Upper;
    const double kk = static_cast<double>(k);

    if (spec.power_form) {
        if (const auto pf = spec.power_form(r, side); pf && pf->exponent > 1) {
            // maximize k z - W (z+b)^a: stationary point z + b = (k/(W a))^{1/(a-1)}
            const double y = std::pow(kk / (pf->coefficient * pf->exponent), 1.0 / (pf->exponent - 1));
            if (y - pf->shift >= 0) {
                const double avg = y * (1 - 1 / pf->exponent) - pf->shift;
                return {avg, avg_side, y - pf->shift, true};
            }
            if (pf->shift > 0)
                return {-pf->coefficient * std::pow(pf->shift, pf->exponent) / kk, avg_side, 0.0, true};
        }
    }

    auto f = [&](double z) { return kk * z - spec.evaluate(r, side, z); };
    double hi = 1.0;
    while (f(2 * hi) > f(hi)) {
        hi *= 2;
        if (hi > 1e15) throw std::runtime_error("Legendre transform of " + spec.id + " is unbounded");
    }
    hi *= 2;
    double lo = 0.0;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    const double z_star = 0.5 * (lo + hi);
    const double best = std::max(f(z_star), f(0.0));
    return {best / kk, avg_side, f(z_star) >= f(0.0) ? z_star : 0.0, false};
}

double bly_ratio(int d, long L, double x) {
    const double z = (L + x) * (L + x + d - 1);
    const Spectrum s = Spectrum::covering(SpectrumQuery(Space::hemisphere_dirichlet(d)), z);
    return s.riesz(1, z) / (w1_hemisphere(d) * std::pow(z, 1.0 + 0.5 * d));
}

std::vector<BlyGapDiagnostic> bly_hemisphere_diagnostics(int d, long l_max) {
    if (d < 2) throw std::domain_error("hemisphere diagnostics need d >= 2");
    std::vector<BlyGapDiagnostic> out;
    const double dd = d;
    for (long L = 1; L <= l_max; ++L) {
        const double c = (1.0 - dd - 2.0 * L) / 2.0;
        const double x = c + std::sqrt(c * c + (dd + (dd + 2) * L) / (dd + 1));
        double rising = 1.0;  // L (L+1) ... (L+d-1)
        for (int j = 0; j < d; ++j) rising *= L + j;
        const double f_x = rising / std::pow((L + dd) * (L + 1.0 / (dd + 1)), dd / 2);
        double f0 = (L - 1.0) * (L + dd * dd / (2 * (dd + 1)));
        for (int j = 1; j <= d - 2; ++j) f0 *= L + j;
        f0 /= std::pow(static_cast<double>(L) * (L + dd - 1), dd / 2);
        out.push_back({L, x, f_x, f0, bly_ratio(d, L, x)});
    }
    return out;
}

}  // namespace spectral
