// geometry.cpp: static-patch geometry and temperatures

#include "rcpi/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rcpi {

void validate(const DeSitterPatch& patch) {
    if (!(patch.alpha > 0.0) || !std::isfinite(patch.alpha)) {
        throw std::invalid_argument("de Sitter radius alpha must be positive and finite, got " +
                                    std::to_string(patch.alpha));
    }
    if (!(patch.r >= 0.0)) {
        throw std::invalid_argument("radial coordinate r must be non-negative, got " +
                                    std::to_string(patch.r));
    }
    if (!(patch.r < patch.alpha)) {
        throw std::invalid_argument("atoms must sit strictly inside the horizon (r < alpha), got r = " +
                                    std::to_string(patch.r) + ", alpha = " + std::to_string(patch.alpha));
    }
}

void validate(const ThermalBath& bath) {
    if (!(bath.temperature >= 0.0) || !std::isfinite(bath.temperature)) {
        throw std::invalid_argument("temperature must be non-negative and finite, got " +
                                    std::to_string(bath.temperature));
    }
}

void validate(const SpacetimeConfig& spacetime) {
    std::visit([](const auto& s) { validate(s); }, spacetime);
}

void validate(const AtomPair& atoms) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + " must be positive and finite, got " + std::to_string(v));
        }
    };
    positive(atoms.omega0, "omega0");
    positive(atoms.mu, "mu");
    positive(atoms.L, "L");
}

namespace geometry {

double AtomPairGeometry::separation() const { return euclidean_separation(r, delta_theta); }

double kappa(const DeSitterPatch& patch) {
    validate(patch);
    // (alpha - r)(alpha + r) keeps precision close to the horizon
    return std::sqrt((patch.alpha - patch.r) * (patch.alpha + patch.r));
}

TemperatureDecomposition local_temperature(const DeSitterPatch& patch) {
    const double k = kappa(patch);
    const double two_pi = 2.0 * std::numbers::pi;
    const double x = patch.r / patch.alpha;

    TemperatureDecomposition out;
    out.T = 1.0 / (two_pi * k);
    out.T_f = 1.0 / (two_pi * patch.alpha);
    out.acceleration = (patch.r / (patch.alpha * patch.alpha)) / std::sqrt((1.0 - x) * (1.0 + x));
    out.T_a = out.acceleration / two_pi;
    return out;
}

double ricci_scalar(const DeSitterPatch& patch) {
    if (!(patch.alpha > 0.0)) {
        throw std::invalid_argument("de Sitter radius alpha must be positive");
    }
    return 12.0 / (patch.alpha * patch.alpha);
}

double euclidean_separation(double r, double delta_theta) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("radial coordinate must be positive for a separated pair");
    }
    if (!(delta_theta > 0.0 && delta_theta <= std::numbers::pi)) {
        throw std::invalid_argument("angular separation must lie in (0, pi], got " +
                                    std::to_string(delta_theta));
    }
    return 2.0 * r * std::sin(0.5 * delta_theta);
}

EmbeddingPoint embed(const DeSitterPatch& patch, double t, double theta, double phi) {
    const double k = kappa(patch);
    const double s = t / patch.alpha;
    return {k * std::sinh(s),
            k * std::cosh(s),
            patch.r * std::cos(theta),
            patch.r * std::sin(theta) * std::cos(phi),
            patch.r * std::sin(theta) * std::sin(phi)};
}

double embedding_interval(const EmbeddingPoint& a, const EmbeddingPoint& b) {
    double out = (a[0] - b[0]) * (a[0] - b[0]);
    for (std::size_t i = 1; i < 5; ++i) {
        out -= (a[i] - b[i]) * (a[i] - b[i]);
    }
    return out;
}

double hyperboloid_constraint(const EmbeddingPoint& z) {
    return z[0] * z[0] - z[1] * z[1] - z[2] * z[2] - z[3] * z[3] - z[4] * z[4];
}

double redshift_factor(const DeSitterPatch& patch) { return kappa(patch) / patch.alpha; }

} // namespace geometry
} // namespace rcpi
