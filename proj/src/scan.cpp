#include "spectral/scan.hpp"

#include "spectral/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spectral {

namespace {

using Fn = std::function<double(double)>;

// target(z)/reference(z) - 1 on a grid for z > 0, dropping non-finite points (vanishing bounds)
Series ratio_series(std::string label, const std::vector<double>& grid, const Fn& target, const Fn& reference,
                    GridPolicy policy) {
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        values[i] = grid[i] > 0 ? target(grid[i]) / reference(grid[i]) - 1.0 : NAN;
    });
    Series s{std::move(label), {}, policy};
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::isfinite(values[i]) && (s.points.empty() || grid[i] > s.points.back().first))
            s.points.emplace_back(grid[i], values[i]);
    return s;
}

Fn riesz_of(std::shared_ptr<const Spectrum> s, int gamma, double scale = 1.0) {
    return [s, gamma, scale](double z) {
        return gamma == 0 ? scale * to_double(s->counting(z)) : scale * s->riesz(gamma, z);
    };
}

std::shared_ptr<const Spectrum> table(const SpectrumQuery& q, const std::vector<double>& grid) {
    return std::make_shared<const Spectrum>(Spectrum::covering(q, grid.empty() ? 0.0 : grid.back()));
}

Fn bound_fn(std::string_view id, BoundParams params, Side side) {
    const BoundSpec& spec = find_bound(id);
    const ResolvedParams r = resolve(spec, params);
    return [&spec, r, side](double z) { return spec.evaluate(r, side, z); };
}

Fn expansion_fn(const Space& space, Quantity q, int terms) {
    return [space, q, terms](double z) { return expansion(space, q, z, terms).value; };
}

Fn weyl_fn(const Space& space, Quantity q) {
    const WeylTerm w = weyl_term(space, q);
    return [w](double z) { return w(z); };
}

Fn weyl_power_fn(int d, int p) {
    const double c = lclass(1, d, p).value * volume(Space::sphere(d)).value();
    const double e = 1.0 + d / (2.0 * p);
    return [c, e](double z) { return c * std::pow(z, e); };
}

std::vector<Series> figure_f2(FigureResolution res) {
    const Space hemi = Space::hemisphere_dirichlet(2);
    const auto grid = level_grid(2, 1, GridPolicy::UniformInW, res);
    const auto spec = table(SpectrumQuery(hemi), grid);
    const std::vector<Series> full = {
        ratio_series("weyl", grid, riesz_of(spec, 0), weyl_fn(hemi, Quantity::N), GridPolicy::UniformInW),
        ratio_series("upper.imp", grid, riesz_of(spec, 0), bound_fn("hemi2.nd.twosided", {}, Side::Upper),
                     GridPolicy::UniformInW),
        ratio_series("lower.imp", grid, riesz_of(spec, 0), bound_fn("hemi2.nd.twosided", {}, Side::Lower),
                     GridPolicy::UniformInW),
    };
    std::vector<Series> out;
    long levels = res.levels;
    for (int panel = 1; panel <= 4; ++panel, levels = std::max<long>(1, levels / 3)) {
        const double z_max = static_cast<double>(levels) * (levels + 1);
        for (const auto& s : full) {
            Series cut{"panel" + std::to_string(panel) + ":" + s.label, {}, s.grid_policy};
            for (const auto& pt : s.points)
                if (pt.first <= z_max) cut.points.push_back(pt);
            out.push_back(std::move(cut));
        }
    }
    return out;
}

std::vector<Series> hemisphere_pair(const Space& hemi, std::string_view lower_id, std::string_view upper_id,
                                    FigureResolution res, const std::string& prefix) {
    const auto grid = level_grid(hemi.dim(), 1, GridPolicy::UniformInW, res);
    const auto spec = table(SpectrumQuery(hemi), grid);
    return {
        ratio_series(prefix + "weyl", grid, riesz_of(spec, 1), weyl_fn(hemi, Quantity::R1), GridPolicy::UniformInW),
        ratio_series(prefix + "upper.imp", grid, riesz_of(spec, 1), bound_fn(upper_id, {}, Side::Upper),
                     GridPolicy::UniformInW),
        ratio_series(prefix + "lower.imp", grid, riesz_of(spec, 1), bound_fn(lower_id, {}, Side::Lower),
                     GridPolicy::UniformInW),
    };
}

std::vector<Series> hemisphere_expansions(const Space& hemi, FigureResolution res, const std::string& tag) {
    const auto grid = level_grid(hemi.dim(), 1, GridPolicy::UniformInW, res);
    const auto spec = table(SpectrumQuery(hemi), grid);
    return {
        ratio_series("n" + tag + ".3term", grid, riesz_of(spec, 0), expansion_fn(hemi, Quantity::N, 3),
                     GridPolicy::UniformInW),
        ratio_series("r1" + tag + ".weyl", grid, riesz_of(spec, 1), weyl_fn(hemi, Quantity::R1),
                     GridPolicy::UniformInW),
        ratio_series("r1" + tag + ".3term", grid, riesz_of(spec, 1), expansion_fn(hemi, Quantity::R1, 3),
                     GridPolicy::UniformInW),
    };
}

}  // namespace

std::string_view grid_policy_name(GridPolicy g) {
    switch (g) {
        case GridPolicy::UniformInZ: return "uniform-z";
        case GridPolicy::UniformInW: return "uniform-w";
        case GridPolicy::LevelsPlusMidpoints: return "levels";
    }
    return "?";
}

GridPolicy parse_grid_policy(std::string_view name) {
    if (name == "uniform-z") return GridPolicy::UniformInZ;
    if (name == "uniform-w") return GridPolicy::UniformInW;
    if (name == "levels") return GridPolicy::LevelsPlusMidpoints;
    throw std::invalid_argument("unknown grid policy '" + std::string(name) + "'; valid: uniform-z, uniform-w, levels");
}

std::vector<double> level_grid(int d, int power, GridPolicy policy, FigureResolution res) {
    if (res.points_per_level < 1 || res.levels < 1) throw std::invalid_argument("grid resolution must be positive");
    const auto z_of = [d, power](double w) { return std::pow(w * (w + d - 1), power); };
    std::vector<double> z;
    switch (policy) {
        case GridPolicy::UniformInW:
            for (long i = 0; i <= res.levels * res.points_per_level; ++i)
                z.push_back(z_of(static_cast<double>(i) / res.points_per_level));
            break;
        case GridPolicy::UniformInZ: {
            const long n = res.levels * res.points_per_level;
            const double z_max = z_of(static_cast<double>(res.levels));
            for (long i = 0; i <= n; ++i) z.push_back(z_max * static_cast<double>(i) / n);
            break;
        }
        case GridPolicy::LevelsPlusMidpoints:
            for (long l = 0; l <= res.levels; ++l) {
                z.push_back(z_of(static_cast<double>(l)));
                if (l < res.levels) z.push_back(0.5 * (z_of(static_cast<double>(l)) + z_of(l + 1.0)));
            }
            break;
    }
    return z;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"f1", "f2", "f34", "f4", "f5", "f6", "f7", "f8", "f9", "f10"};
    return ids;
}

std::vector<Series> figure(std::string_view id, FigureResolution res) {
    constexpr auto W = GridPolicy::UniformInW;
    if (id == "f1") {
        const auto grid = level_grid(2, 1, W, res);
        const auto s2 = table(SpectrumQuery(Space::sphere(2)), grid);
        return {
            ratio_series("upper", grid, riesz_of(s2, 1), bound_fn("s2.r1.upper", {}, Side::Upper), W),
            ratio_series("lower", grid, riesz_of(s2, 1), bound_fn("s2.r1.lower", {}, Side::Lower), W),
            ratio_series("upper.imp", grid, riesz_of(s2, 1), bound_fn("s2.r1.upper.imp", {}, Side::Upper), W),
            ratio_series("lower.imp", grid, riesz_of(s2, 1), bound_fn("s2.r1.lower.imp", {}, Side::Lower), W),
        };
    }
    if (id == "f2") return figure_f2(res);
    if (id == "f34") {
        auto out = hemisphere_pair(Space::hemisphere_dirichlet(2), "hemi2.r1d.lower", "hemi2.r1d.upper", res, "D:");
        auto right = hemisphere_pair(Space::hemisphere_neumann(2), "hemi2.r1n.lower", "hemi2.r1n.upper", res, "N:");
        out.insert(out.end(), right.begin(), right.end());
        return out;
    }
    if (id == "f4" || id == "f5" || id == "f6") {
        const Space s3 = Space::sphere(3);
        const auto grid = level_grid(3, 1, W, res);
        const auto spec = table(SpectrumQuery(s3), grid);
        if (id == "f4")
            return {ratio_series("weyl", grid, riesz_of(spec, 1), weyl_fn(s3, Quantity::R1), W),
                    ratio_series("2term", grid, riesz_of(spec, 1), expansion_fn(s3, Quantity::R1, 2), W)};
        if (id == "f5") {
            const BoundParams d3{3, std::nullopt, std::nullopt, std::nullopt};
            return {ratio_series("weyl", grid, riesz_of(spec, 1), weyl_fn(s3, Quantity::R1), W),
                    ratio_series("upper", grid, riesz_of(spec, 1), bound_fn("sd.r1.upper.shift", d3, Side::Upper), W),
                    ratio_series("lower", grid, riesz_of(spec, 1), bound_fn("sd.r1.lower.shift", d3, Side::Lower), W)};
        }
        return {ratio_series("3term", grid, riesz_of(spec, 0), expansion_fn(s3, Quantity::N, 3), W)};
    }
    if (id == "f7") return hemisphere_expansions(Space::hemisphere_dirichlet(3), res, "d");
    if (id == "f8") return hemisphere_expansions(Space::hemisphere_neumann(3), res, "n");
    if (id == "f9") {
        std::vector<Series> out;
        for (int d = 2; d <= 5; ++d) {
            const auto grid = level_grid(d, 2, W, res);
            const auto spec = table(SpectrumQuery(Space::sphere(d), 2), grid);
            out.push_back(ratio_series("d=" + std::to_string(d), grid, riesz_of(spec, 1), weyl_power_fn(d, 2), W));
        }
        return out;
    }
    if (id == "f10") {
        std::vector<Series> out;
        for (int p = 2; p <= 5; ++p) {
            const auto grid = level_grid(2, p, W, res);
            const auto spec = table(SpectrumQuery(Space::sphere(2), p, Variant::Buckling), grid);
            out.push_back(ratio_series("p=" + std::to_string(p), grid, riesz_of(spec, 1), weyl_power_fn(2, p), W));
        }
        return out;
    }
    std::string valid;
    for (const auto& f : figure_ids()) valid += (valid.empty() ? "" : ", ") + f;
    throw std::invalid_argument("unknown figure '" + std::string(id) + "'; valid: " + valid);
}

std::vector<GapExtremum> gap_extrema(const Space& space, Quantity q, const PowerForm& reference, long l_first,
                                     long l_last) {
    if (!space.has_sphere_levels()) throw std::invalid_argument("gap extrema are computed on sphere-type spectra");
    if (q == Quantity::Average) throw std::invalid_argument("gap extrema need N, R1 or R2");
    std::vector<GapExtremum> out;
    l_first = std::max(l_first, space.first_level());
    if (l_last < l_first) return out;
    const int gamma = q == Quantity::N ? 0 : q == Quantity::R1 ? 1 : 2;
    const Spectrum spec = Spectrum::covering(SpectrumQuery(space), to_double(level_eigenvalue(space, l_last + 1)));
    const auto ratio = [&](double z) {
        const double t = gamma == 0 ? to_double(spec.counting(z)) : spec.riesz(gamma, z);
        return t / (reference.coefficient * std::pow(z + reference.shift, reference.exponent));
    };
    out.resize(static_cast<std::size_t>(l_last - l_first + 1));
    parallel_for(out.size(), [&](std::size_t i) {
        const long l = l_first + static_cast<long>(i);
        const double a = to_double(level_eigenvalue(space, l));
        const double b = to_double(level_eigenvalue(space, l + 1));
        const double tol = 1e-10 * b;
        const double inv_phi = (std::sqrt(5.0) - 1) / 2;
        double lo = a, hi = b;
        double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
        double f1 = ratio(x1), f2 = ratio(x2);
        while (hi - lo > tol) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = ratio(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = ratio(x1);
            }
        }
        const double z_star = 0.5 * (lo + hi);
        constexpr int kSub = 256;
        int changes = 0, last_sign = 0;
        double prev = ratio(a + (b - a) * 0.5 / kSub);
        for (int k = 1; k < kSub; ++k) {
            const double cur = ratio(a + (b - a) * (k + 0.5) / kSub);
            const int sign = cur > prev ? 1 : cur < prev ? -1 : 0;
            if (sign != 0) {
                if (last_sign != 0 && sign != last_sign) ++changes;
                last_sign = sign;
            }
            prev = cur;
        }
        out[i] = {l, z_star, ratio(z_star), changes == 1 && last_sign < 0};
    });
    return out;
}

Series expansion_residual(const Space& space, Quantity q, int terms, double z_min, double z_max, std::size_t n) {
    if (!(z_min > 0) || !(z_max > z_min) || n < 2) throw std::invalid_argument("expansion_residual needs 0 < z_min < z_max, n >= 2");
    const Spectrum spec = Spectrum::covering(SpectrumQuery(space), z_max);
    const WeylTerm lead = weyl_term(space, q);
    std::vector<double> grid(n), values(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = z_min * std::pow(z_max / z_min, static_cast<double>(i) / static_cast<double>(n - 1));
    parallel_for(n, [&](std::size_t i) {
        const double z = grid[i];
        const double t = q == Quantity::N ? to_double(spec.counting(z)) : spec.riesz(1, z);
        const ExpansionEval e = expansion(space, q, z, terms);
        values[i] = std::fabs(t - e.value) / lead(z) * std::pow(z, -e.remainder_scale);
    });
    Series s{std::string(quantity_name(q)) + " " + std::to_string(terms) + "-term residual on " + to_descriptor(space),
             {}, GridPolicy::UniformInZ};
    for (std::size_t i = 0; i < n; ++i) s.points.emplace_back(grid[i], values[i]);
    return s;
}

ExpansionGain expansion_gain(const Space& space, Quantity q, int terms, FigureResolution res) {
    const auto grid = level_grid(space.dim(), 1, GridPolicy::UniformInW, res);
    const double z_top = grid.back() / 10.0;
    const Spectrum spec = Spectrum::covering(SpectrumQuery(space), grid.back());
    const WeylTerm lead = weyl_term(space, q);
    ExpansionGain g{0.0, 0.0};
    for (double z : grid) {
        if (z < z_top) continue;
        const double t = q == Quantity::N ? to_double(spec.counting(z)) : spec.riesz(1, z);
        g.sup_leading = std::max(g.sup_leading, std::fabs(t / lead(z) - 1));
        g.sup_expanded = std::max(g.sup_expanded, std::fabs(t / expansion(space, q, z, terms).value - 1));
    }
    return g;
}

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string to_csv(const std::vector<Series>& series) {
    std::string out = "z,series_label,value\n";
    for (const auto& s : series)
        for (const auto& [z, v] : s.points) out += format_double(z) + "," + s.label + "," + format_double(v) + "\n";
    return out;
}

std::string to_svg(const std::vector<Series>& series) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (const auto& [z, v] : s.points) {
            x0 = std::min(x0, z);
            x1 = std::max(x1, z);
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    if (!(x1 > x0)) x0 = 0, x1 = 1;
    if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
    static const char* colors[] = {"#1f77b4", "#d62728", "#9467bd", "#ff7f0e", "#2ca02c", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" preserveAspectRatio=\"none\" width=\"800\" height=\"500\" viewBox=\""
       << format_double(x0) << ' ' << format_double(-y1) << ' ' << format_double(x1 - x0) << ' '
       << format_double(y1 - y0) << "\">\n";
    std::size_t k = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" vector-effect=\"non-scaling-stroke\" stroke=\"" << colors[k++ % 6]
           << "\" data-label=\"" << s.label << "\" points=\"";
        for (const auto& [z, v] : s.points) os << format_double(z) << ',' << format_double(-v) << ' ';
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace spectral
