#pragma once

#include "spectral/riesz.hpp"
#include "spectral/space.hpp"
#include "spectral/weyl.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spectral {

enum class Side { Lower, Upper };

std::string_view side_name(Side s);

// Parameters of a catalog entry; unset fields take the entry's defaults.
struct BoundParams {
    std::optional<int> d;
    std::optional<int> p;
    std::optional<double> area;   // |Omega| for domain bounds
    std::optional<Space> space;   // closed space for the R_2 bounds
};

// Entry parameters after defaults and range checks.
struct ResolvedParams {
    int d;
    int p;
    double area;
    Space space;
};

// bound(z) = coefficient * area_scale * (z + shift)^exponent
struct PowerForm {
    double coefficient;
    double shift;
    double exponent;
};

struct BoundSpec {
    std::string id;
    std::string statement;
    std::string target_description;
    Quantity quantity;
    bool has_lower;
    bool has_upper;
    bool expected_valid;
    int d_min, d_max, d_default;
    int p_min, p_max, p_default;
    bool uses_area;
    bool uses_space;
    bool needs_both_violations;  // documented failures that are neither upper nor lower bounds

    // Area-scaled entries: the largest admissible |Omega| (also the default)
    // and the measure the comparison spectrum is normalized by.
    std::function<double(const ResolvedParams&)> max_area;
    std::function<double(const ResolvedParams&)> reference_area;
    // Spectrum whose Riesz mean (scaled by area / reference area) is the target.
    std::function<SpectrumQuery(const ResolvedParams&)> target_query;
    std::function<double(const ResolvedParams&, Side, double)> evaluate;
    std::function<std::optional<Rational>(const ResolvedParams&, Side, const Rational&)> evaluate_exact;
    std::function<std::optional<PowerForm>(const ResolvedParams&, Side)> power_form;
    // First n equality points and the sides on which they hold.
    std::function<std::vector<double>(const ResolvedParams&, std::size_t)> equality_points;
    std::vector<Side> equality_sides;
    // Extra grid points where documented counterexamples live.
    std::function<std::vector<double>(const ResolvedParams&, double)> witness_points;
    // Parameter values inside the declared range where a side is known to fail;
    // returns the reason, and verify then expects a violation.
    std::function<std::optional<std::string>(const ResolvedParams&)> known_failure;

    std::vector<Side> sides() const;
};

const std::vector<BoundSpec>& bound_catalog();
const BoundSpec& find_bound(std::string_view id);
ResolvedParams resolve(const BoundSpec& spec, const BoundParams& params);

double bound_value(std::string_view id, const BoundParams& params, double z_or_k,
                   std::optional<Side> side = std::nullopt);
std::optional<Rational> bound_value_exact(std::string_view id, const BoundParams& params, const Rational& z,
                                          std::optional<Side> side = std::nullopt);

std::vector<double> equality_points(std::string_view id, const BoundParams& params, std::size_t n);

// b(l) from the per-gap maximum of R_1 against the shifted Weyl term; tends to z_d.
double optimal_shift(int d, long l);
double shift_zd(int d);

struct ScanPoint {
    double x;
    Side side;
    double target;
    double bound;
    double slack;  // target - bound for lower bounds, bound - target for upper bounds
};

struct EqualityCheck {
    double x;
    Side side;
    double slack;
    bool ok;
};

struct ScanReport {
    std::string id;
    std::string params;
    bool expected_valid = true;
    std::optional<std::string> known_failure;
    std::size_t n_points = 0;
    double min_slack = 0.0;
    double argmin = 0.0;
    std::vector<ScanPoint> points;
    std::vector<ScanPoint> violations;
    std::optional<ScanPoint> first_witness;
    std::vector<EqualityCheck> equality_checks;
    std::size_t negative_bound_points = 0;
    bool lower_violated = false;
    bool upper_violated = false;
    std::vector<std::string> notes;
    bool pass = false;
};

inline constexpr double kViolationTolerance = 1e-9;
inline constexpr std::size_t kStandardGridPoints = 2000;
inline constexpr long kStandardGridLevel = 40;

// Uniform points over [0, lambda_(40)] plus all level endpoints, equality
// points and documented witness points; for averages the range k = 1..500.
std::vector<double> standard_grid(std::string_view id, const BoundParams& params);

// Violations are slack < -tolerance * max(1, |bound|); equality points need |slack| within the same scale.
ScanReport verify(std::string_view id, const BoundParams& params, double tolerance = kViolationTolerance);
ScanReport verify(std::string_view id, const BoundParams& params, std::vector<double> grid,
                  double tolerance = kViolationTolerance);

struct LegendreBound {
    double value;  // bound on (1/k) sum_{j<=k} lambda_j
    Side side;     // Lower when derived from an upper bound on R_1
    double z_star;
    bool closed_form;
};

LegendreBound legendre_average_bound(std::string_view id, const BoundParams& params, long k,
                                     std::optional<Side> bound_side = std::nullopt);

// Per-gap objects of the Weyl upper bound for R_1^D on S^d_+: the maximizer
// x_L in [0,1) of f_L(x) = R_1^D(z)/(L_1 |S^d_+| z^{1+d/2}), z = (L+x)(L+x+d-1).
struct BlyGapDiagnostic {
    long L;
    double x_L;
    double f_at_x;
    double f_at_zero;
    double f_direct;  // f_L(x_L) from the brute-force R_1^D
};

std::vector<BlyGapDiagnostic> bly_hemisphere_diagnostics(int d, long l_max);
double bly_ratio(int d, long L, double x);

}  // namespace spectral
