// liouvillian.cpp: master-equation coefficients, generator and time evolution

#include "rcpi/liouvillian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "rcpi/spectral.hpp"

namespace rcpi::liouvillian {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

struct PairSpectra {
    std::function<double(double)> same;
    std::function<double(double)> cross;
    double half_period{0.0}; // sign changes of the cross spectrum beyond omega0
};

PairSpectra spectra_for(const SpacetimeConfig& spacetime, double L) {
    validate(spacetime);
    PairSpectra out;
    if (const auto* patch = std::get_if<DeSitterPatch>(&spacetime)) {
        const double k = geometry::kappa(*patch);
        out.same = [k](double w) { return spectral::fourier_desitter_same(w, k); };
        out.cross = [k, L](double w) { return spectral::fourier_desitter_cross(w, k, L); };
    } else {
        const double T = std::get<ThermalBath>(spacetime).temperature;
        out.same = [T](double w) { return spectral::fourier_thermal_minkowski(w, T, 0.0, spectral::Pair::Same); };
        out.cross = [T, L](double w) { return spectral::fourier_thermal_minkowski(w, T, L, spectral::Pair::Cross); };
    }
    out.half_period = pi / quadrature::oscillation_rate(spacetime, L);
    return out;
}

// (1 / (w - w0) + 1 / (w + w0)) [G(w) - G(-w)]: the A-type Hilbert integrand folded onto w > 0
quadrature::Integrand a_type(const std::function<double(double)>& g, double w0) {
    return [g, w0](double w) { return (g(w) - g(-w)) * (1.0 / (w - w0) + 1.0 / (w + w0)); };
}

// (1 / (w - w0) - 1 / (w + w0)) [G(w) + G(-w)]: the B-type one
quadrature::Integrand b_type(const std::function<double(double)>& g, double w0) {
    return [g, w0](double w) { return (g(w) + g(-w)) * (1.0 / (w - w0) - 1.0 / (w + w0)); };
}

// (mu^2 / 4) (1 / pi i) x
complex hilbert_prefactor(double mu, double x) { return complex(0.0, -mu * mu / (4.0 * pi) * x); }

const std::array<std::array<Matrix4, 3>, 2>& atom_paulis() {
    static const std::array<std::array<Matrix4, 3>, 2> table = [] {
        std::array<std::array<Matrix4, 3>, 2> t;
        for (int a = 0; a < 2; ++a) {
            for (int i = 0; i < 3; ++i) {
                t[a][i] = pauli::on_atom(a + 1, i + 1);
            }
        }
        return t;
    }();
    return table;
}

const Matrix3& block(const GeneratorMatrices& gen, bool hamiltonian, int alpha, int beta) {
    if (hamiltonian) {
        return alpha == beta ? gen.H_same : gen.H_cross;
    }
    return alpha == beta ? gen.C_same : gen.C_cross;
}

// Real coordinates of a hermitian 4x4 matrix: the diagonal, then the real and
// imaginary parts of the strict upper triangle.
using HermitianCoords = Eigen::Matrix<double, 16, 1>;

HermitianCoords to_coords(const Matrix4& m) {
    HermitianCoords x;
    int k = 0;
    for (int i = 0; i < 4; ++i) x(k++) = m(i, i).real();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            x(k) = m(i, j).real();
            x(k + 6) = m(i, j).imag();
            ++k;
        }
    return x;
}

Matrix4 from_coords(const double* x) {
    Matrix4 m;
    int k = 0;
    for (int i = 0; i < 4; ++i) m(i, i) = x[k++];
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            m(i, j) = complex(x[k], x[k + 6]);
            m(j, i) = std::conj(m(i, j));
            ++k;
        }
    return m;
}

} // namespace

namespace pauli {

Matrix2 sigma(int i) {
    Matrix2 s;
    switch (i) {
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, I, -I, 0.0; break;
    case 3: s << -1.0, 0.0, 0.0, 1.0; break;
    default: throw std::invalid_argument("Pauli index must be 1, 2 or 3");
    }
    return s;
}

Matrix4 on_atom(int atom, int i) {
    const Matrix2 s = sigma(i);
    const Matrix2 id = Matrix2::Identity();
    if (atom != 1 && atom != 2) {
        throw std::invalid_argument("atom index must be 1 or 2");
    }
    const Matrix2& first = atom == 1 ? s : id;
    const Matrix2& second = atom == 1 ? id : s;
    Matrix4 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    out(2 * a + c, 2 * b + d) = first(a, b) * second(c, d);
    return out;
}

} // namespace pauli

DissipatorCoefficients dissipator_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms) {
    validate(atoms);
    const PairSpectra g = spectra_for(spacetime, atoms.L);
    const double w0 = atoms.omega0;
    const double pref = 0.25 * atoms.mu * atoms.mu;
    const double s_up = g.same(w0), s_down = g.same(-w0);
    const double c_up = g.cross(w0), c_down = g.cross(-w0);
    return {pref * (s_up + s_down), pref * (s_up - s_down), pref * (c_up + c_down), pref * (c_up - c_down)};
}

CrossHamiltonian cross_hamiltonian_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms,
                                                const quadrature::HalfLineOptions& opts) {
    validate(atoms);
    const PairSpectra g = spectra_for(spacetime, atoms.L);
    quadrature::HalfLineOptions scaled = opts;
    const double scale = 1.0 / (2.0 * pi * atoms.L);
    scaled.abs_tol *= scale;
    scaled.tail.abs_tol *= scale;

    const auto a = quadrature::half_line_principal_value(a_type(g.cross, atoms.omega0), atoms.omega0, g.half_period, scaled);
    const auto b = quadrature::half_line_principal_value(b_type(g.cross, atoms.omega0), atoms.omega0, g.half_period, scaled);
    const double pref = atoms.mu * atoms.mu / (4.0 * pi);
    return {hilbert_prefactor(atoms.mu, a.value), hilbert_prefactor(atoms.mu, b.value), pref * (a.error + b.error)};
}

HamiltonianCoefficients hamiltonian_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms,
                                                 std::optional<double> cutoff,
                                                 const quadrature::HalfLineOptions& opts) {
    if (!cutoff) {
        throw std::invalid_argument("same-atom coefficients A1, B1 diverge without a frequency cutoff");
    }
    if (!(*cutoff > atoms.omega0) || !std::isfinite(*cutoff)) {
        throw std::invalid_argument("frequency cutoff must be finite and above omega0");
    }
    const CrossHamiltonian cross = cross_hamiltonian_coefficients(spacetime, atoms, opts);
    const PairSpectra g = spectra_for(spacetime, atoms.L);

    quadrature::PVIntegralSpec spec;
    spec.pole = atoms.omega0;
    spec.window = 0.5 * atoms.omega0;
    spec.abs_tol = opts.abs_tol;
    spec.rel_tol = opts.rel_tol;
    const quadrature::Interval support{0.0, *cutoff};
    const auto a = quadrature::principal_value(a_type(g.same, atoms.omega0), spec, support);
    const auto b = quadrature::principal_value(b_type(g.same, atoms.omega0), spec, support);

    HamiltonianCoefficients out;
    out.A1 = hilbert_prefactor(atoms.mu, a.value);
    out.B1 = hilbert_prefactor(atoms.mu, b.value);
    out.A2 = cross.A2;
    out.B2 = cross.B2;
    out.cutoff = *cutoff;
    out.error = cross.error + atoms.mu * atoms.mu / (4.0 * pi) * (a.error + b.error);
    return out;
}

CoefficientSet compute_coefficients(const SpacetimeConfig& spacetime, const AtomPair& atoms,
                                    std::optional<double> cutoff) {
    const DissipatorCoefficients d = dissipator_coefficients(spacetime, atoms);
    CoefficientSet out;
    out.At1 = d.At1;
    out.Bt1 = d.Bt1;
    out.At2 = d.At2;
    out.Bt2 = d.Bt2;
    if (cutoff) {
        const HamiltonianCoefficients h = hamiltonian_coefficients(spacetime, atoms, cutoff);
        out.A1 = h.A1;
        out.B1 = h.B1;
        out.A2 = h.A2;
        out.B2 = h.B2;
        out.cutoff = cutoff;
    } else {
        const CrossHamiltonian h = cross_hamiltonian_coefficients(spacetime, atoms);
        out.A2 = h.A2;
        out.B2 = h.B2;
    }
    return out;
}

Matrix3 coefficient_matrix(complex X, complex Y) {
    Matrix3 m = Matrix3::Zero();
    m(0, 0) = X;
    m(1, 1) = X;
    m(0, 1) = -I * Y; // eps_123 = +1
    m(1, 0) = I * Y;  // eps_213 = -1
    return m;
}

GeneratorMatrices assemble_generator(const CoefficientSet& coeffs, double omega0, const GeneratorOptions& opts) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("transition frequency must be positive");
    }
    if (opts.include_same_atom_shift && !coeffs.cutoff) {
        throw std::invalid_argument("same-atom shift requested but A1, B1 were computed without a cutoff");
    }
    GeneratorMatrices gen;
    gen.omega0 = omega0;
    if (opts.include_same_atom_shift) {
        gen.H_same = coefficient_matrix(coeffs.A1, coeffs.B1);
    }
    gen.H_cross = coefficient_matrix(coeffs.A2, coeffs.B2);
    gen.C_same = coefficient_matrix(coeffs.At1, coeffs.Bt1);
    gen.C_cross = coefficient_matrix(coeffs.At2, coeffs.Bt2);
    return gen;
}

Matrix4 lamb_shift_hamiltonian(const GeneratorMatrices& gen) {
    const auto& s = atom_paulis();
    Matrix4 out = Matrix4::Zero();
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta) {
            const Matrix3& h = block(gen, true, alpha, beta);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (h(i, j) != 0.0) {
                        out += h(i, j) * (s[alpha][i] * s[beta][j]);
                    }
                }
        }
    return -0.5 * I * out;
}

Matrix4 effective_hamiltonian(const GeneratorMatrices& gen) {
    const auto& s = atom_paulis();
    return 0.5 * gen.omega0 * (s[0][2] + s[1][2]) + lamb_shift_hamiltonian(gen);
}

Matrix4 dissipator(const GeneratorMatrices& gen, const Matrix4& rho) {
    const auto& s = atom_paulis();
    Matrix4 out = Matrix4::Zero();
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta) {
            const Matrix3& c = block(gen, false, alpha, beta);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (c(i, j) == 0.0) {
                        continue;
                    }
                    const Matrix4& si = s[alpha][i];
                    const Matrix4& sj = s[beta][j];
                    const Matrix4 sisj = si * sj;
                    out += 0.5 * c(i, j) * (2.0 * sj * rho * si - sisj * rho - rho * sisj);
                }
        }
    return out;
}

Matrix4 apply_generator(const GeneratorMatrices& gen, const Matrix4& rho) {
    const Matrix4 h = effective_hamiltonian(gen);
    return -I * (h * rho - rho * h) + dissipator(gen, rho);
}

SuperOperator superoperator(const GeneratorMatrices& gen) {
    SuperOperator out;
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row) {
            Matrix4 e = Matrix4::Zero();
            e(row, col) = 1.0;
            const Matrix4 image = apply_generator(gen, e);
            out.col(row + 4 * col) = Eigen::Map<const Eigen::Matrix<complex, 16, 1>>(image.data());
        }
    return out;
}

TwoQubitState TwoQubitState::pure(const Vector4& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) {
        throw std::invalid_argument("state vector must be non-zero");
    }
    const Vector4 u = psi / n;
    return {u * u.adjoint()};
}

double TwoQubitState::trace_defect() const { return std::abs(rho.trace() - 1.0); }

double TwoQubitState::hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double TwoQubitState::min_eigenvalue() const {
    const Matrix4 h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void TwoQubitState::validate() const {
    if (hermiticity_defect() > 1e-12) {
        throw std::invalid_argument("density matrix is not hermitian");
    }
    if (trace_defect() > 1e-12) {
        throw std::invalid_argument("density matrix does not have unit trace");
    }
    if (min_eigenvalue() < -1e-10) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

Matrix2 partial_trace(const Matrix4& rho, int keep_atom) {
    if (keep_atom != 1 && keep_atom != 2) {
        throw std::invalid_argument("atom index must be 1 or 2");
    }
    Matrix2 out = Matrix2::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 2; ++k) {
                out(a, b) += keep_atom == 1 ? rho(2 * a + k, 2 * b + k) : rho(2 * k + a, 2 * k + b);
            }
    return out;
}

Trajectory evolve(const TwoQubitState& rho0, const GeneratorMatrices& gen, std::span<const double> tau_grid,
                  const EvolveOptions& opts) {
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;

    if (tau_grid.empty()) {
        throw std::invalid_argument("time grid is empty");
    }
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > tau_grid[i - 1])) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
    rho0.validate();

    // The generator maps hermitian matrices to hermitian matrices, so it acts on the
    // 16 real coordinates as a real matrix and hermiticity is kept exactly.
    Eigen::Matrix<double, 16, 16> R;
    for (int c = 0; c < 16; ++c) {
        double e[16] = {};
        e[c] = 1.0;
        R.col(c) = to_coords(apply_generator(gen, from_coords(e)));
    }
    Trajectory out;

    const HermitianCoords x0 = to_coords(0.5 * (rho0.rho + rho0.rho.adjoint()));
    State x(x0.data(), x0.data() + 16);

    auto rhs = [&R, &out](const State& in, State& dxdt, double) {
        Eigen::Map<HermitianCoords>(dxdt.data()) = R * Eigen::Map<const HermitianCoords>(in.data());
        ++out.rhs_evaluations;
    };

    double last_tau = tau_grid.front();
    auto observer = [&out, &last_tau](const State& state, double tau) {
        TrajectoryPoint p;
        p.tau = tau;
        p.rho = from_coords(state.data());
        const TwoQubitState snapshot{p.rho};
        p.trace = p.rho.trace().real();
        p.hermiticity_defect = snapshot.hermiticity_defect();
        p.min_eigenvalue = snapshot.min_eigenvalue();
        if (p.min_eigenvalue < -positivity_tolerance) {
            out.positivity_flagged = true;
        }
        out.points.push_back(std::move(p));
        last_tau = tau;
    };

    if (tau_grid.size() == 1) {
        observer(x, tau_grid.front());
        return out;
    }

    const double dt0 = (tau_grid[1] - tau_grid[0]) * 1e-3;
    try {
        auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<State>());
        odeint::integrate_times(stepper, rhs, x, tau_grid.begin(), tau_grid.end(), dt0, observer,
                                odeint::max_step_checker(static_cast<int>(opts.max_steps_between_outputs)));
    } catch (const odeint::step_adjustment_error& e) {
        throw IntegrationError(std::string("step size control failed near tau = ") + std::to_string(last_tau) +
                                   ": " + e.what(),
                               last_tau);
    } catch (const odeint::no_progress_error& e) {
        throw IntegrationError(std::string("step budget exhausted near tau = ") + std::to_string(last_tau) + ": " +
                                   e.what(),
                               last_tau);
    }
    return out;
}

} // namespace rcpi::liouvillian
