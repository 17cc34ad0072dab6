// spectral.cpp: spectral functions of the field correlators

#include "rcpi/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rcpi::spectral {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_kappa(double kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("kappa must be positive");
    }
}

void require_temperature(double temperature) {
    if (!(temperature >= 0.0)) {
        throw std::invalid_argument("temperature must be non-negative");
    }
}

} // namespace

double sinc(double u) {
    if (std::abs(u) < series_switch) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    }
    return std::sin(u) / u;
}

double asinhc(double x) {
    if (std::abs(x) < series_switch) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0;
    }
    return std::asinh(x) / x;
}

double bose_weight(double lambda, double beta) {
    if (std::isinf(beta)) {
        return lambda > 0.0 ? lambda : 0.0;
    }
    const double x = beta * lambda;
    if (std::abs(x) < series_switch) {
        // x / (1 - e^{-x}) = 1 + x/2 + x^2/12 - x^4/720 + ...
        return (1.0 + x / 2.0 + x * x / 12.0) / beta;
    }
    return lambda / -std::expm1(-x);
}

double fourier_desitter_same(double lambda, double kappa) {
    require_kappa(kappa);
    return bose_weight(lambda, two_pi * kappa) / two_pi;
}

double geometric_factor_f(double lambda, double z, double kappa) {
    require_kappa(kappa);
    if (!(z >= 0.0)) {
        throw std::invalid_argument("half-separation z must be non-negative");
    }
    const double x = z / kappa;
    const double a = asinhc(x);            // kappa asinh(z / kappa) / z
    const double u = 2.0 * lambda * z * a; // 2 kappa lambda asinh(z / kappa)
    return sinc(u) * a / std::sqrt(1.0 + x * x);
}

double fourier_desitter_cross(double lambda, double kappa, double L) {
    if (!(L >= 0.0)) {
        throw std::invalid_argument("separation must be non-negative");
    }
    return fourier_desitter_same(lambda, kappa) * geometric_factor_f(lambda, 0.5 * L, kappa);
}

double fourier_thermal_minkowski(double lambda, double temperature, double L, Pair pair) {
    require_temperature(temperature);
    const double beta = temperature > 0.0 ? 1.0 / temperature : std::numeric_limits<double>::infinity();
    const double same = bose_weight(lambda, beta) / two_pi;
    if (pair == Pair::Same) {
        return same;
    }
    if (!(L >= 0.0)) {
        throw std::invalid_argument("separation must be non-negative");
    }
    return same * sinc(lambda * L);
}

double inverse_temperature(const SpacetimeConfig& spacetime) {
    if (const auto* patch = std::get_if<DeSitterPatch>(&spacetime)) {
        return two_pi * geometry::kappa(*patch);
    }
    const auto& bath = std::get<ThermalBath>(spacetime);
    validate(bath);
    return bath.temperature > 0.0 ? 1.0 / bath.temperature : std::numeric_limits<double>::infinity();
}

SpectralValue fourier(const SpacetimeConfig& spacetime, double lambda, double L, Pair pair) {
    SpectralValue out{lambda, 0.0};
    if (const auto* patch = std::get_if<DeSitterPatch>(&spacetime)) {
        const double k = geometry::kappa(*patch);
        out.value = pair == Pair::Same ? fourier_desitter_same(lambda, k) : fourier_desitter_cross(lambda, k, L);
    } else {
        out.value = fourier_thermal_minkowski(lambda, std::get<ThermalBath>(spacetime).temperature, L, pair);
    }
    return out;
}

} // namespace rcpi::spectral
