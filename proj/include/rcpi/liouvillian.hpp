// liouvillian.hpp: Kossakowski-Lindblad generator for two static two-level atoms
//
//   d rho / d tau = -i [H_eff, rho] + L[rho]
//   H_eff = sum_a (omega0 / 2) sigma_3^(a) - (i/2) sum_{ab,ij} H_ij^(ab) sigma_i^(a) sigma_j^(b)
//   L[rho] = 1/2 sum_{ab,ij} C_ij^(ab) (2 sigma_j^(b) rho sigma_i^(a) - sigma_i^(a) sigma_j^(b) rho - rho sigma_i^(a) sigma_j^(b))
//
// with H_ij = A delta_ij - i B eps_ij3 - A delta_3i delta_3j (C likewise with A~, B~).
// Single-atom basis is {|g>, |e>}; the two-atom product basis is {|gg>, |ge>, |eg>, |ee>}.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rcpi/geometry.hpp"
#include "rcpi/quadrature.hpp"

namespace rcpi::liouvillian {

using complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix3 = Eigen::Matrix3cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using SuperOperator = Eigen::Matrix<complex, 16, 16>;

namespace pauli {
// (sigma_1, sigma_2, sigma_3) in the {|g>, |e>} basis, sigma_3 |e> = +|e>
Matrix2 sigma(int i);
// sigma_i acting on atom (1 or 2) of the pair
Matrix4 on_atom(int atom, int i);
} // namespace pauli

// Subscript 1: same atom (alpha = beta); subscript 2: across atoms.
// A and B come from Hilbert transforms and are purely imaginary (the 1/(pi i) of the
// transform); A~ and B~ come from the spectrum itself and are real.
struct CoefficientSet {
    complex A1{}, B1{}, A2{}, B2{};
    double At1{0.0}, Bt1{0.0}, At2{0.0}, Bt2{0.0};
    std::optional<double> cutoff; // set when A1, B1 were computed
};

struct DissipatorCoefficients {
    double At1{0.0}, Bt1{0.0}, At2{0.0}, Bt2{0.0};
};

struct HamiltonianCoefficients {
    complex A1{}, B1{}, A2{}, B2{};
    double cutoff{0.0};
    double error{0.0}; // quadrature error estimate on the imaginary parts, summed
};

struct CrossHamiltonian {
    complex A2{}, B2{};
    double error{0.0};
};

// A~ = (mu^2 / 4)[G(w0) + G(-w0)], B~ = (mu^2 / 4)[G(w0) - G(-w0)] for the same- and cross-atom spectra.
DissipatorCoefficients dissipator_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms);

// A2, B2 by principal value plus oscillatory-tail quadrature; no cutoff needed.
CrossHamiltonian cross_hamiltonian_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms,
                                                const quadrature::HalfLineOptions& opts = {});

// All four Hamiltonian-side coefficients. A1 and B1 diverge without the Bethe-style
// frequency cutoff, so a missing cutoff (or one not above omega0) is rejected.
HamiltonianCoefficients hamiltonian_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms,
                                                 std::optional<double> cutoff,
                                                 const quadrature::HalfLineOptions& opts = {});

// Dissipator plus cross-atom Hamiltonian coefficients; A1, B1 only when a cutoff is given.
CoefficientSet compute_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms,
                                    std::optional<double> cutoff = std::nullopt);

struct GeneratorMatrices {
    Matrix3 H_same = Matrix3::Zero();
    Matrix3 H_cross = Matrix3::Zero();
    Matrix3 C_same = Matrix3::Zero();
    Matrix3 C_cross = Matrix3::Zero();
    double omega0{1.0};
};

struct GeneratorOptions {
    // Keep the cutoff-dependent A1, B1 in H_LS. Off for interaction energies.
    bool include_same_atom_shift{false};
};

// delta_ij X - i Y eps_ij3 - X delta_3i delta_3j
Matrix3 coefficient_matrix(complex X, complex Y);

GeneratorMatrices assemble_generator(const CoefficientSet& coeffs, double omega0, const GeneratorOptions& opts = {});

// H_LS = -(i/2) sum H_ij^(ab) sigma_i^(a) sigma_j^(b)
Matrix4 lamb_shift_hamiltonian(const GeneratorMatrices& gen);
Matrix4 effective_hamiltonian(const GeneratorMatrices& gen);
Matrix4 dissipator(const GeneratorMatrices& gen, const Matrix4& rho);
// Right-hand side of the master equation.
Matrix4 apply_generator(const GeneratorMatrices& gen, const Matrix4& rho);
// Acts on column-major vec(rho).
SuperOperator superoperator(const GeneratorMatrices& gen);

struct TwoQubitState {
    Matrix4 rho = Matrix4::Zero();

    static TwoQubitState pure(const Vector4& psi);
    double trace_defect() const;      // |Tr rho - 1|
    double hermiticity_defect() const; // max |rho - rho^dagger|
    double min_eigenvalue() const;    // of the hermitian part
    // Throws std::invalid_argument unless hermitian within 1e-12, unit trace within 1e-12,
    // and eigenvalues >= -1e-10.
    void validate() const;
};

// Product-basis index of |a1 a2>, a = 0 for g and 1 for e.
constexpr int basis_index(int atom1_excited, int atom2_excited) { return 2 * atom1_excited + atom2_excited; }

// Reduced 2x2 state of one atom (1 or 2).
Matrix2 partial_trace(const Matrix4& rho, int keep_atom);

struct TrajectoryPoint {
    double tau{0.0};
    Matrix4 rho = Matrix4::Zero();
    double trace{0.0};
    double hermiticity_defect{0.0};
    double min_eigenvalue{0.0};
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    bool positivity_flagged{false}; // some state had an eigenvalue below -1e-8
    std::size_t rhs_evaluations{0};
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double tau) : std::runtime_error(what), tau_(tau) {}
    double tau() const { return tau_; }

private:
    double tau_;
};

struct EvolveOptions {
    double abs_tol{1e-12};
    double rel_tol{1e-10};
    std::size_t max_steps_between_outputs{5'000'000};
};

inline constexpr double positivity_tolerance = 1e-8;

// Adaptive Dormand-Prince integration of the master equation on the 16 real coordinates
// of a hermitian matrix, so hermiticity holds by construction. The first grid
// time is the initial time. No renormalisation is applied; trace drift is reported.
Trajectory evolve(const TwoQubitState& rho0, const GeneratorMatrices& gen, std::span<const double> tau_grid,
                  const EvolveOptions& opts = {});

} // namespace rcpi::liouvillian
