#pragma once

#include "spectral/bounds.hpp"
#include "spectral/riesz.hpp"
#include "spectral/space.hpp"
#include "spectral/weyl.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace spectral {

enum class GridPolicy { UniformInZ, UniformInW, LevelsPlusMidpoints };

std::string_view grid_policy_name(GridPolicy g);
GridPolicy parse_grid_policy(std::string_view name);

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (z, value), z strictly increasing
    GridPolicy grid_policy = GridPolicy::UniformInW;
};

struct FigureResolution {
    int points_per_level = 40;
    long levels = 60;
};

const std::vector<std::string>& figure_ids();
std::vector<Series> figure(std::string_view id, FigureResolution res = {});

// Grid of level-variable points over [0, lambda_(levels)] of a sphere-type
// spectrum: z = (w(w+d-1))^power.
std::vector<double> level_grid(int d, int power, GridPolicy policy, FigureResolution res);

struct GapExtremum {
    long l;
    double z_star;
    double ratio_star;
    bool is_unique;
};

// Maximum of quantity / (coefficient (z + shift)^exponent) inside each gap
// (lambda_(l), lambda_(l+1)) for l in [l_first, l_last].
std::vector<GapExtremum> gap_extrema(const Space& space, Quantity q, const PowerForm& reference, long l_first,
                                     long l_last);

// Scaled residual |target/leading - expansion ratio| z^{-remainder_scale} on a
// logarithmic grid over [z_min, z_max].
Series expansion_residual(const Space& space, Quantity q, int terms, double z_min, double z_max, std::size_t n);

struct ExpansionGain {
    double sup_leading;   // sup |target/leading - 1| over the top decade
    double sup_expanded;  // sup |target/expansion - 1| over the same points
};

ExpansionGain expansion_gain(const Space& space, Quantity q, int terms, FigureResolution res = {});

std::string to_csv(const std::vector<Series>& series);
std::string to_svg(const std::vector<Series>& series);

// Writes through a temporary file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string format_double(double x);

}  // namespace spectral
