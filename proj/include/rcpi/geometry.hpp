// geometry.hpp: static-patch de Sitter geometry and the two spacetimes under comparison

#pragma once

#include <array>
#include <variant>

namespace rcpi {

// All quantities are dimensionless multiples of one reference length
// (hbar = c = k_B = 1).

// Static patch of de Sitter space. Both atoms sit at the same radial
// coordinate r, strictly inside the cosmological horizon r = alpha.
struct DeSitterPatch {
    double alpha{1.0}; // de Sitter radius sqrt(3 / Lambda)
    double r{0.0};     // static radial coordinate of both atoms

    bool operator==(const DeSitterPatch&) const = default;
};

// Minkowski space with the field in a thermal state; temperature 0 is the vacuum.
struct ThermalBath {
    double temperature{0.0};

    bool operator==(const ThermalBath&) const = default;
};

using SpacetimeConfig = std::variant<DeSitterPatch, ThermalBath>;

// The two probes: transition frequency, coupling to the field, separation.
struct AtomPair {
    double omega0{1.0};
    double mu{0.1};
    double L{1.0};

    bool operator==(const AtomPair&) const = default;
};

// Throws std::invalid_argument unless omega0, mu and L are positive and finite.
void validate(const AtomPair& atoms);

inline bool is_de_sitter(const SpacetimeConfig& s) {
    return std::holds_alternative<DeSitterPatch>(s);
}

// Throws std::invalid_argument unless alpha > 0 and 0 <= r < alpha.
void validate(const DeSitterPatch& patch);
// Throws std::invalid_argument for a negative (or non-finite) temperature.
void validate(const ThermalBath& bath);
void validate(const SpacetimeConfig& spacetime);

namespace geometry {

struct AtomPairGeometry {
    double r{0.0};
    double delta_theta{0.0}; // (0, pi]

    double separation() const;
};

struct TemperatureDecomposition {
    double T{0.0};            // 1 / (2 pi kappa), felt by a static atom
    double T_f{0.0};          // Gibbons-Hawking part 1 / (2 pi alpha)
    double T_a{0.0};          // Unruh part a / (2 pi)
    double acceleration{0.0}; // proper acceleration of the static trajectory
};

using EmbeddingPoint = std::array<double, 5>;

// kappa = sqrt(alpha^2 - r^2) = sqrt(g_00) * alpha
double kappa(const DeSitterPatch& patch);

TemperatureDecomposition local_temperature(const DeSitterPatch& patch);

// R = 12 / alpha^2
double ricci_scalar(const DeSitterPatch& patch);

// L = 2 r sin(delta_theta / 2)
double euclidean_separation(double r, double delta_theta);

// Point (t, r, theta, phi) of the static patch on the hyperboloid
// z0^2 - z1^2 - z2^2 - z3^2 - z4^2 = -alpha^2 in 5D Minkowski space.
EmbeddingPoint embed(const DeSitterPatch& patch, double t, double theta, double phi);

// Minkowski interval (z0 - z0')^2 - sum_i (zi - zi')^2 between two embedded points.
double embedding_interval(const EmbeddingPoint& a, const EmbeddingPoint& b);

// z0^2 - z1^2 - z2^2 - z3^2 - z4^2; equals -alpha^2 on the hyperboloid.
double hyperboloid_constraint(const EmbeddingPoint& z);

// Proper time of the static atom per unit coordinate time, sqrt(g_00) = kappa / alpha.
double redshift_factor(const DeSitterPatch& patch);

} // namespace geometry
} // namespace rcpi
