// test_geometry.cpp: geometry and temperature tests

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "rcpi/geometry.hpp"

using namespace rcpi;
using doctest::Approx;

TEST_SUITE("geometry") {

TEST_CASE("kappa and the local temperature") {
    const DeSitterPatch patch{2.0, 1.2};
    CHECK(geometry::kappa(patch) == Approx(1.6).epsilon(1e-15));
    const auto t = geometry::local_temperature(patch);
    CHECK(t.T == Approx(1.0 / (2.0 * std::numbers::pi * 1.6)).epsilon(1e-15));
    CHECK(t.T_f == Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(geometry::ricci_scalar(patch) == Approx(3.0));
    CHECK(geometry::redshift_factor(patch) == Approx(0.8));
}

TEST_CASE("geodesic observer at the origin feels only the Gibbons-Hawking part") {
    const auto t = geometry::local_temperature({3.0, 0.0});
    CHECK(t.acceleration == 0.0);
    CHECK(t.T_a == 0.0);
    CHECK(t.T == Approx(t.T_f).epsilon(1e-15));
}

TEST_CASE("T^2 = T_f^2 + T_a^2 over a 20x20 grid") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double alpha = 0.1 * std::pow(1000.0, i / 19.0);
        for (int j = 0; j < 20; ++j) {
            const double r = alpha * 0.999 * j / 19.0;
            const auto t = geometry::local_temperature({alpha, r});
            worst = std::max(worst, std::abs(t.T_f * t.T_f + t.T_a * t.T_a - t.T * t.T) / (t.T * t.T));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("kappa stays accurate near the horizon") {
    const double alpha = 1.0;
    const double r = 1.0 - 1e-12;
    // sqrt((1 - r)(1 + r)) with 1 - r exact in binary
    const double reference = std::sqrt((alpha - r) * 2.0);
    CHECK(geometry::kappa({alpha, r}) == Approx(reference).epsilon(1e-6));
}

TEST_CASE("invalid patches are rejected") {
    CHECK_THROWS_AS(geometry::kappa({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(geometry::kappa({1.0, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(geometry::kappa({-1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(geometry::kappa({1.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ThermalBath{-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AtomPair{1.0, 0.1, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(SpacetimeConfig{ThermalBath{0.0}}));
}

TEST_CASE("euclidean separation") {
    CHECK(geometry::euclidean_separation(1.0, std::numbers::pi) == Approx(2.0));
    CHECK(geometry::euclidean_separation(0.5, std::numbers::pi / 3.0) == Approx(0.5));
    CHECK(geometry::AtomPairGeometry{2.0, std::numbers::pi / 2.0}.separation() == Approx(2.0 * std::sqrt(2.0)));
    CHECK_THROWS_AS(geometry::euclidean_separation(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry::euclidean_separation(1.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry::euclidean_separation(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("embedded points lie on the hyperboloid") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double alpha = 0.5 + 5.0 * u(rng);
        const DeSitterPatch patch{alpha, alpha * 0.99 * u(rng)};
        const auto z = geometry::embed(patch, 10.0 * (u(rng) - 0.5), std::numbers::pi * u(rng),
                                       2.0 * std::numbers::pi * u(rng));
        double scale = 0.0;
        for (double c : z) scale += c * c;
        CHECK(std::abs(geometry::hyperboloid_constraint(z) + alpha * alpha) <= 1e-14 * scale);
    }
}

TEST_CASE("static worldlines: interval matches the correlator denominator") {
    // For two static atoms at equal r separated by dtheta, the 5D interval between
    // coordinate times t and t' is 4 kappa^2 sinh^2(dt / 2 alpha) - 4 r^2 sin^2(dtheta / 2).
    const DeSitterPatch patch{2.0, 1.1};
    const double k = geometry::kappa(patch);
    for (double dtheta : {0.1, 1.0, 2.5}) {
        for (double dt : {0.0, 0.3, 4.0}) {
            const auto a = geometry::embed(patch, dt, 0.4, 0.0);
            const auto b = geometry::embed(patch, 0.0, 0.4 + dtheta, 0.0);
            const double expected = 4.0 * k * k * std::pow(std::sinh(dt / (2.0 * patch.alpha)), 2) -
                                    4.0 * patch.r * patch.r * std::pow(std::sin(dtheta / 2.0), 2);
            CHECK(geometry::embedding_interval(a, b) == Approx(expected).epsilon(1e-12).scale(1.0));
        }
    }
}

} // TEST_SUITE
