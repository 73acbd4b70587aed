#include "cli.hpp"

#include "spectral/acceptance.hpp"
#include "spectral/riesz.hpp"
#include "spectral/scan.hpp"
#include "spectral/sumrules.hpp"
#include "spectral/weyl.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

namespace spectral::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string space = "sphere:2";
    std::optional<int> power;
    int p() const { return power.value_or(1); }
    std::optional<int> gamma;
    std::optional<double> z_min;
    std::optional<double> z_max;
    std::optional<int> points;
    std::string grid = "uniform-w";
    std::string format;
    std::string out;
    std::optional<long> l_max;
    std::optional<double> tol;
    std::optional<double> area;
};

void add_common(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--space", c.space, "space descriptor family:dim, e.g. sphere:3, hemisphere-d:2, cp:4");
    cmd->add_option("--power", c.power, "power p of the Laplacian")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", c.gamma, "Riesz exponent (0 = counting function)")->check(CLI::Range(0, 2));
    cmd->add_option("--zmin", c.z_min, "smallest grid value");
    cmd->add_option("--zmax", c.z_max, "largest grid value");
    cmd->add_option("--points", c.points, "grid points (per level for uniform-w)")->check(CLI::PositiveNumber);
    cmd->add_option("--grid", c.grid, "grid policy: uniform-w, uniform-z, levels");
    cmd->add_option("--format", c.format, "output format: csv, json, svg (markdown for report)");
    cmd->add_option("--out", c.out, "output file or directory");
    cmd->add_option("--lmax", c.l_max, "largest level index")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", c.tol, "tolerance override")->check(CLI::PositiveNumber);
}

std::string fmt(double x) { return format_double(x); }

json integer_json(const Integer& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return json(x.convert_to<long long>());
    return json(to_string(x));
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << content;
    else
        atomic_write(path, content);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string check_format(const std::string& f, std::initializer_list<const char*> allowed, const char* fallback) {
    if (f.empty()) return fallback;
    for (const char* a : allowed)
        if (f == a) return f;
    std::string valid;
    for (const char* a : allowed) valid += (valid.empty() ? "" : ", ") + std::string(a);
    throw UsageError("unsupported format '" + f + "'; valid here: " + valid);
}

int gamma_of(const RunConfig& c, const std::string& quantity) {
    if (!quantity.empty()) {
        const Quantity q = parse_quantity(quantity);
        if (q == Quantity::Average) throw UsageError("eval handles N, R1 and R2");
        const int g = q == Quantity::N ? 0 : q == Quantity::R1 ? 1 : 2;
        if (c.gamma && *c.gamma != g) throw UsageError("--gamma contradicts --quantity");
        return g;
    }
    return c.gamma.value_or(1);
}

std::vector<double> config_grid(const RunConfig& c, const Space& space) {
    const GridPolicy policy = parse_grid_policy(c.grid);
    const long levels = c.l_max.value_or(60);
    if (levels < 1) throw UsageError("--lmax must be at least 1 for a grid");
    std::vector<double> grid;
    if (policy == GridPolicy::UniformInZ) {
        const double top = c.z_max.value_or(std::pow(to_double(level_eigenvalue(space, levels)), c.p()));
        const double bottom = c.z_min.value_or(0.0);
        const int n = c.points.value_or(2000);
        if (!(top > bottom) || n < 2) throw UsageError("uniform-z grid needs zmin < zmax and at least 2 points");
        for (int i = 0; i < n; ++i) grid.push_back(bottom + (top - bottom) * i / (n - 1));
        return grid;
    }
    if (!space.has_sphere_levels() && space.family() != Family::Circle)
        throw UsageError("level grids are defined for spheres and hemispheres; use --grid uniform-z");
    const FigureResolution res{c.points.value_or(40), levels};
    for (double z : level_grid(space.dim(), c.p(), policy, res))
        if (z >= c.z_min.value_or(0.0) && z <= c.z_max.value_or(std::numeric_limits<double>::infinity()))
            grid.push_back(z);
    return grid;
}

int cmd_levels(const RunConfig& c, std::ostream& out) {
    const Space space = parse_space(c.space);
    const std::string f = check_format(c.format, {"csv", "json"}, "csv");
    const long l_max = c.l_max.value_or(10);
    const SpectrumQuery q(space, c.p());
    const Spectrum s = Spectrum::first_levels(q, l_max - space.first_level() + 1);
    if (f == "csv") {
        std::string text = c.p() == 1 ? "l,lambda,mult\n" : "l,lambda,mult,value\n";
        for (const auto& lv : s.levels()) {
            text += std::to_string(lv.l) + "," + to_string(lv.lambda) + "," + to_string(lv.mult);
            if (c.p() != 1) text += "," + to_string(lv.value);
            text += "\n";
        }
        emit(text, c.out, out);
    } else {
        json rows = json::array();
        for (const auto& lv : s.levels()) {
            json row{{"l", lv.l}, {"lambda", integer_json(lv.lambda)}, {"mult", integer_json(lv.mult)}};
            if (c.p() != 1) row["value"] = integer_json(lv.value);
            rows.push_back(row);
        }
        emit(dump(json{{"space", to_descriptor(space)}, {"power", c.p()}, {"levels", rows}}), c.out, out);
    }
    return kOk;
}

int cmd_eval(const RunConfig& c, const std::string& quantity, const std::vector<std::string>& zs, std::ostream& out) {
    const Space space = parse_space(c.space);
    const std::string f = check_format(c.format, {"csv", "json"}, "csv");
    const int gamma = gamma_of(c, quantity);
    const SpectrumQuery q(space, c.p());
    const double tol = c.tol.value_or(1e-12);
    std::vector<Rational> points;
    for (const auto& z : zs) points.push_back(parse_rational(z));
    if (points.empty())
        for (double z : config_grid(c, space)) points.push_back(exact_rational(z));
    if (points.empty()) throw UsageError("eval needs z values or a grid");

    const bool has_closed = c.p() == 1 && ((gamma == 1 && space.family() == Family::Sphere) ||
                                             (gamma == 0 && space.is_hemisphere()));
    json rows = json::array();
    std::string text = "z,brute_force,brute_force_exact,closed_form,closed_form_exact,agree\n";
    for (const Rational& z : points) {
        if (z < 0) throw UsageError("z must be nonnegative");
        const Rational brute = gamma == 0 ? Rational(counting(q, z)) : riesz_mean(q, gamma, z);
        std::optional<Rational> closed;
        if (has_closed)
            closed = gamma == 1 ? riesz1_closed_sphere(space.dim(), z) : Rational(counting_closed_hemisphere(space, z));
        const double zd = to_double(z);
        const double bf = gamma == 0 ? to_double(counting(q, zd)) : riesz_mean(q, gamma, zd);
        std::optional<double> cf;
        if (has_closed)
            cf = gamma == 1 ? riesz1_closed_sphere(space.dim(), zd)
                            : to_double(counting_closed_hemisphere(space, zd));
        json agree = nullptr;
        std::string agree_text;
        if (closed) {
            const bool ok = *closed == brute && std::fabs(*cf - bf) <= tol * std::max(1.0, std::fabs(bf));
            agree = ok;
            agree_text = ok ? "true" : "false";
        }
        text += to_string(z) + "," + fmt(bf) + "," + to_string(brute) + "," + (cf ? fmt(*cf) : "") + "," +
                (closed ? to_string(*closed) : "") + "," + agree_text + "\n";
        json row{{"z", to_string(z)}, {"brute_force", bf}, {"brute_force_exact", to_string(brute)}};
        row["closed_form"] = cf ? json(*cf) : json(nullptr);
        row["closed_form_exact"] = closed ? json(to_string(*closed)) : json(nullptr);
        row["agree"] = agree;
        rows.push_back(row);
    }
    if (f == "csv")
        emit(text, c.out, out);
    else
        emit(dump(json{{"space", to_descriptor(space)}, {"power", c.p()}, {"gamma", gamma}, {"values", rows}}),
             c.out, out);
    return kOk;
}

std::string file_stem(const std::string& id) {
    std::string s;
    for (char ch : id) s += ch == '>' ? 'g' : ch == '=' ? 'e' : ch;
    return s;
}

bool space_given(const std::string& descriptor) {
    try {
        parse_space(descriptor);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

int cmd_verify(RunConfig c, std::vector<std::string> args, bool space_flag, std::ostream& out) {
    if (!args.empty() && space_given(args.front())) {
        c.space = args.front();
        space_flag = true;
        args.erase(args.begin());
    }
    if (args.empty()) throw UsageError("verify needs bound ids or 'all'");
    const std::string f = check_format(c.format, {"json", "csv"}, "json");
    std::vector<std::string> ids;
    const bool all = args.size() == 1 && args.front() == "all";
    if (all)
        for (const auto& s : bound_catalog()) ids.push_back(s.id);
    else
        ids = args;

    int code = kOk;
    for (const auto& id : ids) {
        const BoundSpec& spec = find_bound(id);
        BoundParams params;
        if (space_flag) {
            const Space sp = parse_space(c.space);
            if (spec.uses_space || !all) {
                params.space = sp;
            } else {
                // with 'all', run only the entries stated on the given space
                ResolvedParams probe{sp.dim(), spec.p_default, 0.0, sp};
                if (sp.dim() < spec.d_min || sp.dim() > spec.d_max) continue;
                if (!(spec.target_query(probe).space == sp)) continue;
                params.space = sp;
            }
        }
        params.p = c.power;
        params.area = c.area;
        ScanReport rep = c.tol ? verify(spec.id, params, *c.tol) : verify(spec.id, params);
        if (!rep.pass) code = kUnexpected;
        out << (rep.pass ? "ok   " : "FAIL ") << rep.id << " [" << rep.params << "] "
            << (rep.expected_valid ? "valid" : "expected failure") << ": min slack " << fmt(rep.min_slack) << " at z="
            << fmt(rep.argmin) << ", " << rep.violations.size() << " violations";
        if (rep.first_witness) out << ", first witness z=" << fmt(rep.first_witness->x);
        out << "\n";
        for (const auto& n : rep.notes) out << "     note: " << n << "\n";
        if (!c.out.empty()) {
            fs::create_directories(c.out);
            const fs::path base = fs::path(c.out) / file_stem(rep.id);
            if (f == "json") {
                atomic_write(base.string() + ".json", dump(report_to_json(rep)));
            } else {
                std::string csv = "z,side,target,bound,slack\n";
                for (const auto& p : rep.points)
                    csv += fmt(p.x) + "," + std::string(side_name(p.side)) + "," + fmt(p.target) + "," + fmt(p.bound) +
                           "," + fmt(p.slack) + "\n";
                atomic_write(base.string() + ".csv", csv);
            }
        }
    }
    return code;
}

std::string series_output(const std::vector<Series>& series, const std::string& f, const std::string& title) {
    if (f == "csv") return to_csv(series);
    if (f == "svg") return to_svg(series);
    json arr = json::array();
    for (const auto& s : series) {
        json pts = json::array();
        for (const auto& [z, v] : s.points) pts.push_back({z, v});
        arr.push_back({{"label", s.label}, {"grid_policy", grid_policy_name(s.grid_policy)}, {"points", pts}});
    }
    return dump(json{{"title", title}, {"series", arr}});
}

int cmd_expansion(const RunConfig& c, const std::string& quantity, int terms, std::ostream& out) {
    const Space space = parse_space(c.space);
    const Quantity q = parse_quantity(quantity);
    const std::string f = check_format(c.format, {"csv", "json", "svg"}, "csv");
    if (c.p() != 1) throw UsageError("expansions are for the Laplacian itself (--power 1)");
    expansion_coefficients(space, q, 0.0);  // validates the pair
    const int gamma = q == Quantity::N ? 0 : 1;
    const auto grid = config_grid(c, space);
    const Spectrum s = Spectrum::covering(SpectrumQuery(space), grid.empty() ? 0.0 : grid.back());
    Series target{"target", {}, parse_grid_policy(c.grid)}, model{"expansion", {}, target.grid_policy},
        ratio{"ratio-1", {}, target.grid_policy};
    for (double z : grid) {
        if (z <= 0) continue;
        const double t = gamma == 0 ? to_double(s.counting(z)) : s.riesz(1, z);
        const double e = expansion(space, q, z, terms).value;
        target.points.emplace_back(z, t);
        model.points.emplace_back(z, e);
        ratio.points.emplace_back(z, t / e - 1);
    }
    emit(series_output({target, model, ratio}, f,
                       std::string(quantity_name(q)) + " on " + to_descriptor(space) + ", " + std::to_string(terms) +
                           " terms"),
         c.out, out);
    return kOk;
}

int cmd_sumrule(const RunConfig& c, const std::string& mode, std::ostream& out) {
    const Space space = parse_space(c.space);
    if (mode == "pq") {
        const PqReport rep = check_pq_identity(space, c.l_max.value_or(50));
        out << "P_N = Q_N on " << to_descriptor(space) << " for " << rep.gap_indices.size() << " gap indices (L <= "
            << rep.l_max << "): " << (rep.pass ? "exact equality" : "MISMATCH") << "\n";
        for (const auto& m : rep.mismatches)
            out << "  N=" << to_string(m.n) << ": P=" << to_string(m.p) << "  Q=" << to_string(m.q) << "\n";
        return rep.pass ? kOk : kUnexpected;
    }
    if (mode == "trace") {
        const TraceSeries t = trace_identity_partial(space, c.l_max.value_or(1000));
        out << "partial sum " << fmt(t.partial_sum) << " (l <= " << t.l_max << "), limit " << fmt(t.limit)
            << ", difference " << fmt(t.limit - t.partial_sum) << ", tail estimate " << fmt(t.tail_estimate) << "\n";
        if (space == Space::sphere(1))
            out << "circle series in square-root form: " << fmt(circle_trace_remark_partial(t.l_max)) << "\n";
        return std::fabs(t.limit - t.partial_sum) <= t.tail_estimate ? kOk : kUnexpected;
    }
    if (mode == "r2") {
        const ScanReport rep = r2_bounds_check(space);
        out << "R2 two-sided bounds on " << to_descriptor(space) << ": " << rep.violations.size()
            << " violations, lower side " << (rep.lower_violated ? "violated" : "holds") << ", upper side "
            << (rep.upper_violated ? "violated" : "holds") << "\n";
        if (rep.known_failure) out << "  known failure: " << *rep.known_failure << "\n";
        return rep.pass ? kOk : kUnexpected;
    }
    throw UsageError("sumrule mode must be pq, trace or r2");
}

int cmd_figure(const RunConfig& c, const std::string& id, std::ostream& out) {
    FigureResolution res;
    if (c.points) res.points_per_level = *c.points;
    if (c.l_max) res.levels = *c.l_max;
    const auto series = figure(id, res);
    const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
    fs::create_directories(dir);
    std::vector<std::string> formats;
    if (c.format.empty())
        formats = {"csv", "svg"};
    else
        formats = {check_format(c.format, {"csv", "json", "svg"}, "csv")};
    for (const auto& f : formats) {
        const fs::path path = dir / (id + "." + f);
        atomic_write(path, series_output(series, f, id));
        out << path.string() << "\n";
    }
    return kOk;
}

int cmd_report(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::string f = check_format(c.format, {"markdown", "json"}, "markdown");
    const auto results = run_acceptance([&](const CriterionResult& r) { err << format_result(r) << "\n"; });
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    if (f == "json") {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        emit(dump(json{{"pass", ok}, {"criteria", arr}}), c.out, out);
    } else {
        std::string md = "# Acceptance report\n\n| # | criterion | result | detail |\n|---|---|---|---|\n";
        for (const auto& r : results)
            md += "| " + std::to_string(r.id) + " | " + r.name + " | " + (r.pass ? "PASS" : "FAIL") + " | " + r.detail +
                  " |\n";
        md += std::string("\n") + (ok ? "All criteria pass.\n" : "Some criteria fail.\n");
        emit(md, c.out, out);
    }
    return ok ? kOk : kUnexpected;
}

}  // namespace

json report_to_json(const ScanReport& rep) {
    json j{{"id", rep.id},
           {"params", rep.params},
           {"expected_valid", rep.expected_valid},
           {"pass", rep.pass},
           {"n_points", rep.n_points},
           {"min_slack", rep.min_slack},
           {"argmin", rep.argmin},
           {"violation_count", rep.violations.size()},
           {"lower_violated", rep.lower_violated},
           {"upper_violated", rep.upper_violated},
           {"negative_bound_points", rep.negative_bound_points}};
    j["known_failure"] = rep.known_failure ? json(*rep.known_failure) : json(nullptr);
    if (rep.first_witness) {
        const auto& w = *rep.first_witness;
        j["first_witness"] = {{"z", w.x}, {"side", side_name(w.side)}, {"target", w.target}, {"bound", w.bound},
                              {"slack", w.slack}};
    } else {
        j["first_witness"] = nullptr;
    }
    json eq = json::array();
    for (const auto& e : rep.equality_checks)
        eq.push_back({{"z", e.x}, {"side", side_name(e.side)}, {"slack", e.slack}, {"ok", e.ok}});
    j["equality_checks"] = eq;
    j["notes"] = rep.notes;
    return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Riesz means, Weyl asymptotics and sharp spectral bounds on spheres and symmetric spaces",
                 "spectral-riesz"};
    app.require_subcommand(1);
    RunConfig c;
    std::string quantity;
    std::vector<std::string> positional;
    int terms = 3;

    auto* levels = app.add_subcommand("levels", "energy levels and multiplicities");
    add_common(levels, c);

    auto* eval = app.add_subcommand("eval", "brute-force and closed-form N, R1, R2 at z values");
    add_common(eval, c);
    eval->add_option("--quantity", quantity, "N, R1 or R2");
    eval->add_option("z", positional, "z values (decimals or a/b, exact)");

    auto* ver = app.add_subcommand("verify", "check catalog bounds on the standard grid");
    add_common(ver, c);
    ver->add_option("--area", c.area, "|Omega| for domain bounds")->check(CLI::NonNegativeNumber);
    ver->add_option("args", positional, "[space] bound ids, or all")->required();

    auto* exp = app.add_subcommand("expansion", "ratio of a spectral function to its asymptotic expansion");
    add_common(exp, c);
    exp->add_option("--quantity", quantity, "N or R1")->required();
    exp->add_option("--terms", terms, "number of expansion terms")->check(CLI::Range(1, 3));

    std::string mode;
    auto* sum = app.add_subcommand("sumrule", "sum-rule identity, trace series or R2 bounds");
    add_common(sum, c);
    sum->add_option("args", positional, "[space] pq|trace|r2")->required()->expected(1, 2);

    std::string fig_id;
    auto* figcmd = app.add_subcommand("figure", "write figure data (CSV/SVG)");
    add_common(figcmd, c);
    figcmd->add_option("id", fig_id, "f1, f2, f34, f4, ..., f10")->required();

    auto* rep = app.add_subcommand("report", "run the acceptance suite");
    add_common(rep, c);

    std::vector<const char*> argv{"spectral-riesz"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (c.format == "markdown" && !rep->parsed()) throw UsageError("markdown output is only for report");
        if (levels->parsed()) return cmd_levels(c, out);
        if (eval->parsed()) return cmd_eval(c, quantity, positional, out);
        if (ver->parsed()) return cmd_verify(c, positional, ver->count("--space") > 0, out);
        if (exp->parsed()) return cmd_expansion(c, quantity, terms, out);
        if (sum->parsed()) {
            if (positional.size() == 2) c.space = positional.front();
            return cmd_sumrule(c, positional.back(), out);
        }
        if (figcmd->parsed()) return cmd_figure(c, fig_id, out);
        if (rep->parsed()) return cmd_report(c, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUnexpected;
    }
    return kUsage;
}

}  // namespace spectral::cli
