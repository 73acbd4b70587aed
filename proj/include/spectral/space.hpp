#pragma once

#include "spectral/exact.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace spectral {

enum class Family {
    Sphere,
    HemisphereDirichlet,
    HemisphereNeumann,
    Circle,
    RealProjective,
    ComplexProjective,
    QuaternionProjective,
    CayleyPlane,
};

std::string_view family_name(Family f);

// A manifold with boundary condition and real dimension. Construction
// validates the dimension; a circle is stored as the 1-sphere.
class Space {
public:
    Space(Family family, int dim);

    static Space sphere(int d) { return {Family::Sphere, d}; }
    static Space hemisphere_dirichlet(int d) { return {Family::HemisphereDirichlet, d}; }
    static Space hemisphere_neumann(int d) { return {Family::HemisphereNeumann, d}; }

    Family family() const { return family_; }
    int dim() const { return dim_; }

    bool is_hemisphere() const {
        return family_ == Family::HemisphereDirichlet || family_ == Family::HemisphereNeumann;
    }
    bool is_closed() const { return !is_hemisphere(); }
    // Sphere and hemispheres share lambda_(l) = l(l+d-1).
    bool has_sphere_levels() const { return family_ == Family::Sphere || is_hemisphere(); }
    long first_level() const { return family_ == Family::HemisphereDirichlet ? 1 : 0; }

    friend bool operator==(const Space&, const Space&) = default;

private:
    Family family_;
    int dim_;
};

struct EnergyLevel {
    long l;
    Integer lambda;
    Integer mult;
};

EnergyLevel energy_level(const Space& space, long l);
Integer level_eigenvalue(const Space& space, long l);

// First positive eigenvalue lambda_(1) (equal to d on the sphere).
Integer first_positive_eigenvalue(const Space& space);

// Largest l with lambda_(l) <= z, by exact comparison; nullopt when no level
// qualifies (z below the bottom of the spectrum).
std::optional<long> max_level_index(const Space& space, double z);
std::optional<long> max_level_index(const Space& space, const Rational& z);

// Nonnegative root of w(w+d-1) = z.
double invert_w(int d, double z);

// psi(w) = w - floor(w) - 1/2
double fluctuation(double w);

struct WPhase {
    double w;
    double psi;
};

// w and psi(w) for the level variable of z, with psi snapped to -1/2 when w is
// within 8 ulp of an integer.
WPhase phase_at(int d, double z);

// Riemannian volume |M| in the normalization of energy_level.
PiPower volume(const Space& space);

std::string to_descriptor(const Space& space);
Space parse_space(std::string_view descriptor);

}  // namespace spectral
