// shifts.cpp: Dicke-state level shifts and interaction energies

#include "rcpi/shifts.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rcpi::shifts {

namespace {

constexpr double pi = std::numbers::pi;
using liouvillian::complex;
using liouvillian::Matrix3;

double sign_of(DickeState state) {
    switch (state) {
    case DickeState::S: return 1.0;
    case DickeState::A: return -1.0;
    default: throw std::invalid_argument("the interaction energy is defined for the entangled states S and A only");
    }
}

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

// 1 / (L sqrt(1 + (L / 2 kappa)^2))
double desitter_amplitude(double L, double kappa) {
    const double x = L / (2.0 * kappa);
    return 1.0 / (L * std::hypot(1.0, x));
}

liouvillian::GeneratorMatrices strip_same(const liouvillian::GeneratorMatrices& gen, const LevelShiftOptions& opts) {
    liouvillian::GeneratorMatrices out = gen;
    if (!opts.include_same_atom) {
        out.H_same.setZero();
    }
    return out;
}

} // namespace

std::string_view to_string(DickeState state) {
    switch (state) {
    case DickeState::G: return "G";
    case DickeState::E: return "E";
    case DickeState::S: return "S";
    case DickeState::A: return "A";
    }
    return "?";
}

std::string_view to_string(Method method) {
    switch (method) {
    case Method::ClosedForm: return "closed_form";
    case Method::Quadrature: return "quadrature";
    case Method::AsymptoticFar: return "asymptotic_far";
    case Method::AsymptoticNear: return "asymptotic_near";
    }
    return "?";
}

liouvillian::Vector4 dicke_vector(DickeState state) {
    using liouvillian::basis_index;
    const double h = std::numbers::sqrt2 / 2.0;
    liouvillian::Vector4 v = liouvillian::Vector4::Zero();
    switch (state) {
    case DickeState::G: v(basis_index(0, 0)) = 1.0; break;
    case DickeState::E: v(basis_index(1, 1)) = 1.0; break;
    case DickeState::S:
        v(basis_index(1, 0)) = h;
        v(basis_index(0, 1)) = h;
        break;
    case DickeState::A:
        v(basis_index(1, 0)) = h;
        v(basis_index(0, 1)) = -h;
        break;
    }
    return v;
}

Eigen::Vector4d dicke_populations(const liouvillian::Matrix4& rho) {
    Eigen::Vector4d out;
    const DickeState order[] = {DickeState::G, DickeState::E, DickeState::S, DickeState::A};
    for (int i = 0; i < 4; ++i) {
        const liouvillian::Vector4 v = dicke_vector(order[i]);
        out(i) = (v.adjoint() * rho * v)(0, 0).real();
    }
    return out;
}

double levelshift_general(const liouvillian::GeneratorMatrices& gen, DickeState state, const LevelShiftOptions& opts) {
    const Matrix3 h11 = opts.include_same_atom ? gen.H_same : Matrix3::Zero();
    const Matrix3& h22 = h11;
    const Matrix3& h12 = gen.H_cross;
    const Matrix3& h21 = gen.H_cross; // G12 = G21 makes the cross blocks equal
    const complex I{0.0, 1.0};

    complex same_trace = h11.trace() + h22.trace();
    complex cross_trace = h12.trace() + h21.trace();
    complex cross_33 = h12(2, 2) + h21(2, 2);
    complex same_antisym = (h11(0, 1) - h11(1, 0)) + (h22(0, 1) - h22(1, 0));

    complex value;
    switch (state) {
    case DickeState::G: value = -0.5 * I * (cross_33 + same_trace - I * same_antisym); break;
    case DickeState::E: value = -0.5 * I * (cross_33 + same_trace + I * same_antisym); break;
    case DickeState::S: value = -0.5 * I * (cross_trace + same_trace - 2.0 * cross_33); break;
    case DickeState::A: value = 0.5 * I * (cross_trace - same_trace); break;
    }
    return value.real();
}

double levelshift_expectation(const liouvillian::GeneratorMatrices& gen, DickeState state,
                              const LevelShiftOptions& opts) {
    const liouvillian::Matrix4 h = liouvillian::lamb_shift_hamiltonian(strip_same(gen, opts));
    const liouvillian::Vector4 v = dicke_vector(state);
    return (v.adjoint() * h * v)(0, 0).real();
}

double envelope_desitter(double L, double kappa, double mu) {
    check_positive(L, "L");
    check_positive(kappa, "kappa");
    return mu * mu / (4.0 * pi) * desitter_amplitude(L, kappa);
}

double envelope_minkowski(double L, double mu) {
    check_positive(L, "L");
    return mu * mu / (4.0 * pi * L);
}

double rcpi_closed_desitter(double L, double kappa, double omega0, double mu, DickeState state) {
    const double s = sign_of(state);
    check_positive(omega0, "omega0");
    const double phase = 2.0 * omega0 * kappa * std::asinh(L / (2.0 * kappa));
    return s * -(envelope_desitter(L, kappa, mu) * std::cos(phase));
}

double rcpi_closed_minkowski(double L, double omega0, double mu, DickeState state) {
    const double s = sign_of(state);
    check_positive(omega0, "omega0");
    return s * -(envelope_minkowski(L, mu) * std::cos(omega0 * L));
}

double rcpi_asymptotic(double L, double kappa, double omega0, double mu, Regime regime, DickeState state) {
    const double s = sign_of(state);
    check_positive(L, "L");
    check_positive(kappa, "kappa");
    check_positive(omega0, "omega0");
    if (regime == Regime::Near) {
        return s * -(mu * mu / (4.0 * pi * L) * std::cos(omega0 * L));
    }
    return s * -(mu * mu / (2.0 * pi) * kappa / (L * L) * std::cos(2.0 * omega0 * kappa * std::log(L / kappa)));
}

double rcpi_force_desitter(double L, double kappa, double omega0, double mu, DickeState state) {
    const double s = sign_of(state);
    check_positive(L, "L");
    check_positive(kappa, "kappa");
    check_positive(omega0, "omega0");
    const double x = L / (2.0 * kappa);
    const double c = desitter_amplitude(L, kappa);
    const double dc = -c / L - c * (x / (2.0 * kappa)) / (1.0 + x * x);
    const double phase = 2.0 * omega0 * kappa * std::asinh(x);
    const double dphase = omega0 / std::hypot(1.0, x);
    const double pref = mu * mu / (4.0 * pi);
    return s * pref * (dc * std::cos(phase) - c * std::sin(phase) * dphase);
}

double rcpi_force_minkowski(double L, double omega0, double mu, DickeState state) {
    const double s = sign_of(state);
    check_positive(L, "L");
    check_positive(omega0, "omega0");
    const double pref = mu * mu / (4.0 * pi);
    return s * pref * (-std::cos(omega0 * L) / (L * L) - omega0 * std::sin(omega0 * L) / L);
}

ShiftResult rcpi_closed(const SpacetimeConfig& spacetime, const AtomPair& atoms, DickeState state) {
    validate(spacetime);
    validate(atoms);
    ShiftResult out{state, 0.0, Method::ClosedForm, spacetime, 0.0};
    if (state == DickeState::G || state == DickeState::E) {
        return out;
    }
    // A is formed by negating S so the two agree to the last bit
    double s_value;
    if (const auto* patch = std::get_if<DeSitterPatch>(&spacetime)) {
        s_value = rcpi_closed_desitter(atoms.L, geometry::kappa(*patch), atoms.omega0, atoms.mu, DickeState::S);
    } else {
        s_value = rcpi_closed_minkowski(atoms.L, atoms.omega0, atoms.mu, DickeState::S);
    }
    out.delta_E = state == DickeState::S ? s_value : -s_value;
    return out;
}

ShiftResult rcpi_quadrature(const SpacetimeConfig& spacetime, const AtomPair& atoms, DickeState state,
                            const quadrature::HalfLineOptions& opts) {
    validate(atoms);
    ShiftResult out{state, 0.0, Method::Quadrature, spacetime, 0.0};
    if (state == DickeState::G || state == DickeState::E) {
        return out;
    }
    const auto integral = quadrature::rcpi_integral(spacetime, atoms.omega0, atoms.L, opts);
    const double pref = atoms.mu * atoms.mu / (4.0 * pi * pi);
    const double s_value = -pref * integral.value;
    out.delta_E = state == DickeState::S ? s_value : -s_value;
    out.error = pref * integral.error;
    return out;
}

} // namespace rcpi::shifts
