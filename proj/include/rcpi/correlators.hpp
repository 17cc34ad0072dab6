// correlators.hpp: positive-frequency Wightman functions along static trajectories
//
// These are the time-domain objects. The rest of the library works with their
// closed-form Fourier transforms (spectral.hpp); the functions here serve as
// oracles and keep the i*epsilon regulator explicit.

#pragma once

#include <complex>
#include <cstddef>

#include "rcpi/geometry.hpp"

namespace rcpi::correlators {

using complex = std::complex<double>;

enum class Pair { Same, Cross };

struct TruncatedSum {
    complex value{0.0, 0.0};
    std::size_t terms_used{0};
    double tail_bound{0.0}; // bound on |sum of omitted terms|; +inf when no bound applies
};

// G^(11)(dtau) = -1 / (16 pi^2 kappa^2 sinh^2(dtau / 2kappa - i eps))
complex wightman_desitter_same(double delta_tau, double epsilon, double kappa);

// G^(12)(dtau) = -1 / (16 pi^2 kappa^2 [sinh^2(dtau / 2kappa - i eps) - (r^2 / kappa^2) sin^2(dtheta / 2)])
complex wightman_desitter_cross(double delta_tau, double epsilon, double kappa, double r,
                                double delta_theta);

// Image sum -1/(4 pi^2) sum_{|n| <= n_max} 1 / ((dtau - i n / T - i eps)^2 - L^2)
// (L^2 term absent for Pair::Same). The tail bound uses |term_n| <= 1 / (4 pi^2 Im(z_n)^2)
// summed against an integral comparison, and is finite only when eps * T < 1.
TruncatedSum wightman_thermal_minkowski(double delta_tau, double epsilon, double temperature,
                                        double L, Pair pair, std::size_t n_max);

} // namespace rcpi::correlators
