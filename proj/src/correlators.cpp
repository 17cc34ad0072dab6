// correlators.cpp: Wightman functions along static worldlines

#include "rcpi/correlators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rcpi::correlators {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

void require_regulator(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("i*epsilon regulator must be positive");
    }
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("kappa must be positive");
    }
}

// sum_{n > n0} 1 / (n - c)^2 for n0 + 1 - c > 0
double inverse_square_tail(double n0, double c) {
    const double x = n0 + 1.0 - c;
    return 1.0 / (x * x) + 1.0 / x;
}

} // namespace

complex wightman_desitter_same(double delta_tau, double epsilon, double kappa) {
    require_regulator(epsilon);
    require_kappa(kappa);
    const complex s = std::sinh(complex(delta_tau / (2.0 * kappa), -epsilon));
    return -1.0 / (16.0 * pi * pi * kappa * kappa * s * s);
}

complex wightman_desitter_cross(double delta_tau, double epsilon, double kappa, double r,
                                double delta_theta) {
    require_regulator(epsilon);
    require_kappa(kappa);
    if (!(r >= 0.0)) {
        throw std::invalid_argument("radial coordinate must be non-negative");
    }
    const complex s = std::sinh(complex(delta_tau / (2.0 * kappa), -epsilon));
    const double offset = r * std::sin(0.5 * delta_theta) / kappa;
    return -1.0 / (16.0 * pi * pi * kappa * kappa * (s * s - offset * offset));
}

TruncatedSum wightman_thermal_minkowski(double delta_tau, double epsilon, double temperature,
                                        double L, Pair pair, std::size_t n_max) {
    require_regulator(epsilon);
    if (!(temperature >= 0.0)) {
        throw std::invalid_argument("temperature must be non-negative");
    }
    if (pair == Pair::Cross && !(L > 0.0)) {
        throw std::invalid_argument("cross correlator needs a positive separation");
    }
    const double L2 = pair == Pair::Cross ? L * L : 0.0;

    auto term = [&](double n) {
        const double shift = temperature > 0.0 ? n / temperature : 0.0;
        const complex z = delta_tau - I * (shift + epsilon);
        return -1.0 / (4.0 * pi * pi * (z * z - L2));
    };

    TruncatedSum out;
    if (temperature == 0.0) {
        out.value = term(0.0);
        out.terms_used = 1;
        out.tail_bound = 0.0;
        return out;
    }

    // outermost images first; they are the smallest terms
    complex acc{0.0, 0.0};
    for (std::size_t k = n_max; k >= 1; --k) {
        const double n = static_cast<double>(k);
        acc += term(n) + term(-n);
    }
    acc += term(0.0);
    out.value = acc;
    out.terms_used = 2 * n_max + 1;

    const double c = epsilon * temperature;
    if (c >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
    } else {
        const double N = static_cast<double>(n_max);
        const double scale = temperature * temperature / (4.0 * pi * pi);
        out.tail_bound = scale * (inverse_square_tail(N, 0.0) + inverse_square_tail(N, c));
    }
    return out;
}

} // namespace rcpi::correlators
