// spectral.hpp: Fourier transforms of the field correlators (frequency-domain response)
//
// G(lambda) = int d(dtau) e^{i lambda dtau} G(dtau). Both spacetimes give the same
// single-atom response lambda / (2 pi (1 - e^{-beta lambda})), with beta = 2 pi kappa in
// de Sitter and beta = 1 / T in the thermal bath; they differ in the cross-atom factor.

#pragma once

#include "rcpi/correlators.hpp"
#include "rcpi/geometry.hpp"

namespace rcpi::spectral {

using correlators::Pair;

struct SpectralValue {
    double lambda{0.0};
    double value{0.0};
};

// Below this magnitude the removable singularities switch to their Taylor series.
inline constexpr double series_switch = 1e-4;

// sin(u) / u
double sinc(double u);
// asinh(x) / x
double asinhc(double x);
// lambda / (1 - e^{-beta lambda}); equals 1 / beta at lambda = 0 and lambda * step(lambda) for beta = inf
double bose_weight(double lambda, double beta);

// (1 / 2 pi) lambda / (1 - e^{-2 pi kappa lambda})
double fourier_desitter_same(double lambda, double kappa);

// f(lambda, z) = sin(2 kappa lambda asinh(z / kappa)) / (2 z lambda sqrt(1 + z^2 / kappa^2))
double geometric_factor_f(double lambda, double z, double kappa);

// G^(12)(lambda) = G^(11)(lambda) f(lambda, L / 2)
double fourier_desitter_cross(double lambda, double kappa, double L);

// Transform of the thermal image-sum correlator. Summing the residues of the images
// at dtau = i n / T gives the Planck weight (1 / 2 pi) lambda / (1 - e^{-lambda / T});
// the cross-atom pair picks up the flat-space factor sin(lambda L) / (lambda L).
double fourier_thermal_minkowski(double lambda, double temperature, double L, Pair pair);

// beta = 2 pi kappa (de Sitter) or 1 / T (thermal; +inf for the vacuum)
double inverse_temperature(const SpacetimeConfig& spacetime);

// Dispatch over the spacetime; L is ignored for Pair::Same.
SpectralValue fourier(const SpacetimeConfig& spacetime, double lambda, double L, Pair pair);

} // namespace rcpi::spectral
