// shifts.hpp: Dicke-state level shifts and the resonance Casimir-Polder interaction
//
// The interaction energy is the L-dependent part of the shift of the entangled states:
//   de Sitter:  dE_S = -(mu^2 / 4 pi) cos(2 omega0 kappa asinh(L / 2 kappa)) / (L sqrt(1 + (L / 2 kappa)^2))
//   Minkowski:  dE_S = -(mu^2 / 4 pi) cos(omega0 L) / L, at any temperature
// and dE_A = -dE_S in both.

#pragma once

#include <string_view>

#include "rcpi/geometry.hpp"
#include "rcpi/liouvillian.hpp"
#include "rcpi/quadrature.hpp"

namespace rcpi::shifts {

// |G> = |gg>, |E> = |ee>, |S> = (|eg> + |ge>) / sqrt 2, |A> = (|eg> - |ge>) / sqrt 2
enum class DickeState { G, E, S, A };

std::string_view to_string(DickeState state);
liouvillian::Vector4 dicke_vector(DickeState state);
// Diagonal of rho in the Dicke basis, ordered G, E, S, A.
Eigen::Vector4d dicke_populations(const liouvillian::Matrix4& rho);

enum class Method { ClosedForm, Quadrature, AsymptoticFar, AsymptoticNear };
enum class Regime { Far, Near };

std::string_view to_string(Method method);

struct ShiftResult {
    DickeState state{DickeState::S};
    double delta_E{0.0};
    Method method{Method::ClosedForm};
    SpacetimeConfig spacetime{};
    double error{0.0}; // quadrature error estimate; 0 for analytic methods
};

struct LevelShiftOptions {
    // Off drops the cutoff-dependent same-atom blocks and keeps only the L-dependent part.
    bool include_same_atom{true};
};

// <state| H_LS |state> from the explicit combinations of the H_ij^(ab) entries.
double levelshift_general(const liouvillian::GeneratorMatrices& gen, DickeState state,
                          const LevelShiftOptions& opts = {});

// The same expectation value by direct matrix algebra on H_LS.
double levelshift_expectation(const liouvillian::GeneratorMatrices& gen, DickeState state,
                              const LevelShiftOptions& opts = {});

// Closed forms below accept only S and A; the uncorrelated states carry no interaction.
double rcpi_closed_desitter(double L, double kappa, double omega0, double mu, DickeState state);
double rcpi_closed_minkowski(double L, double omega0, double mu, DickeState state);

// Far: -(mu^2 / 2 pi)(kappa / L^2) cos(2 omega0 kappa log(L / kappa)).
// Near: -(mu^2 / 4 pi)(1 / L) cos(omega0 L).
double rcpi_asymptotic(double L, double kappa, double omega0, double mu, Regime regime, DickeState state);

// Amplitude multiplying the cosine, always positive.
double envelope_desitter(double L, double kappa, double mu);
double envelope_minkowski(double L, double mu);

// -d(dE)/dL, differentiated analytically.
double rcpi_force_desitter(double L, double kappa, double omega0, double mu, DickeState state);
double rcpi_force_minkowski(double L, double omega0, double mu, DickeState state);

// Dispatch on the spacetime. For G and E these return 0.
ShiftResult rcpi_closed(const SpacetimeConfig& spacetime, const AtomPair& atoms, DickeState state);
ShiftResult rcpi_quadrature(const SpacetimeConfig& spacetime, const AtomPair& atoms, DickeState state,
                            const quadrature::HalfLineOptions& opts = {});

} // namespace rcpi::shifts
