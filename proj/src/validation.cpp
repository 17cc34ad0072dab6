// validation.cpp: built-in consistency checks behind `rcpi validate`

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rcpi/cli.hpp"
#include "rcpi/geometry.hpp"
#include "rcpi/liouvillian.hpp"
#include "rcpi/quadrature.hpp"
#include "rcpi/shifts.hpp"
#include "rcpi/spectral.hpp"

namespace rcpi::cli {

namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

double rel_err(double value, double reference) {
    if (value == reference) {
        return 0.0;
    }
    return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

class Check {
public:
    Check(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

    // Records one comparison; deviation is whatever measure the check uses.
    void record(json point, double value, double reference, double deviation) {
        ++points_;
        if (!(deviation <= worst_)) {
            worst_ = std::isnan(deviation) ? std::numeric_limits<double>::infinity() : deviation;
            worst_point_ = {{"point", point}, {"value", value}, {"reference", reference}, {"deviation", deviation}};
        }
        if (!(deviation <= tolerance_)) {
            passed_ = false;
            if (failures_.size() < 10) {
                failures_.push_back({{"point", point}, {"value", value}, {"reference", reference},
                                     {"deviation", deviation}});
            }
        }
    }

    void relative(json point, double value, double reference) {
        record(std::move(point), value, reference, rel_err(value, reference));
    }

    void fail(const std::string& why) {
        passed_ = false;
        if (failures_.size() < 10) {
            failures_.push_back({{"error", why}});
        }
    }

    bool passed() const { return passed_; }

    json report() const {
        json out = {{"name", name_}, {"passed", passed_}, {"tolerance", tolerance_}, {"points", points_}};
        out["worst"] = worst_point_.is_null() ? json(nullptr) : worst_point_;
        if (!failures_.empty()) {
            out["failures"] = failures_;
        }
        return out;
    }

private:
    std::string name_;
    double tolerance_;
    bool passed_{true};
    std::size_t points_{0};
    double worst_{-1.0};
    json worst_point_;
    json failures_ = json::array();
};

template <class Body>
void guarded(Check& check, Body body) {
    try {
        body();
    } catch (const std::exception& e) {
        check.fail(e.what());
    }
}

Check kms_de_sitter() {
    Check c("kms_de_sitter", 1e-12);
    guarded(c, [&] {
        for (double kappa : {0.5, 1.0, 2.0}) {
            for (int i = 1; i <= 40; ++i) {
                const double lambda = 0.25 * i;
                const double same = spectral::fourier_desitter_same(lambda, kappa) /
                                    spectral::fourier_desitter_same(-lambda, kappa);
                const double cross = spectral::fourier_desitter_cross(lambda, kappa, 0.7 * kappa) /
                                     spectral::fourier_desitter_cross(-lambda, kappa, 0.7 * kappa);
                const double ref = std::exp(2.0 * pi * kappa * lambda);
                c.relative({{"kappa", kappa}, {"lambda", lambda}, {"pair", "same"}}, same, ref);
                if (std::isfinite(cross)) {
                    c.relative({{"kappa", kappa}, {"lambda", lambda}, {"pair", "cross"}}, cross, ref);
                }
            }
        }
    });
    return c;
}

Check kms_thermal() {
    Check c("kms_thermal", 1e-12);
    guarded(c, [&] {
        for (double T : {0.1, 1.0, 10.0}) {
            for (int i = 1; i <= 40; ++i) {
                const double lambda = 0.25 * i;
                const double same = spectral::fourier_thermal_minkowski(lambda, T, 0.0, spectral::Pair::Same) /
                                    spectral::fourier_thermal_minkowski(-lambda, T, 0.0, spectral::Pair::Same);
                c.relative({{"T", T}, {"lambda", lambda}}, same, std::exp(lambda / T));
            }
        }
    });
    return c;
}

Check temperature_decomposition(int n) {
    Check c("temperature_decomposition", 1e-12);
    guarded(c, [&] {
        for (int i = 0; i < n; ++i) {
            const double alpha = 0.5 * std::pow(20.0, static_cast<double>(i) / (n - 1));
            for (int j = 0; j < n; ++j) {
                const double r = alpha * 0.98 * static_cast<double>(j) / (n - 1);
                const auto t = geometry::local_temperature({alpha, r});
                c.relative({{"alpha", alpha}, {"r", r}}, t.T_f * t.T_f + t.T_a * t.T_a, t.T * t.T);
            }
        }
    });
    return c;
}

Check oracle_grid(Level level) {
    Check c("oracle_grid", 1e-6);
    guarded(c, [&] {
        const std::vector<double> ratios = level == Level::Full ? std::vector<double>{0.1, 0.3, 1.0, 3.0, 10.0}
                                                                : std::vector<double>{1.0};
        for (double ratio : ratios) {
            for (double w0k : {0.5, 1.0, 2.0}) {
                const DeSitterPatch patch{1.0, 0.0};
                const AtomPair atoms{w0k, 0.1, ratio};
                const double q = shifts::rcpi_quadrature(patch, atoms, shifts::DickeState::S).delta_E;
                const double ref = shifts::rcpi_closed(patch, atoms, shifts::DickeState::S).delta_E;
                c.relative({{"L_over_kappa", ratio}, {"omega0_kappa", w0k}}, q, ref);
            }
        }
    });
    return c;
}

Check thermal_independence() {
    Check c("thermal_temperature_independence", 1e-12);
    guarded(c, [&] {
        const AtomPair atoms{1.0, 0.1, 1.3};
        const double q0 = shifts::rcpi_quadrature(ThermalBath{0.0}, atoms, shifts::DickeState::S).delta_E;
        const double closed = shifts::rcpi_closed_minkowski(atoms.L, atoms.omega0, atoms.mu, shifts::DickeState::S);
        for (double T : {0.1, 1.0, 10.0}) {
            const double q = shifts::rcpi_quadrature(ThermalBath{T}, atoms, shifts::DickeState::S).delta_E;
            c.relative({{"T", T}, {"method", "quadrature"}}, q, q0);
            const double cf = shifts::rcpi_closed(ThermalBath{T}, atoms, shifts::DickeState::S).delta_E;
            c.relative({{"T", T}, {"method", "closed_form"}}, cf, closed);
        }
    });
    return c;
}

Check thermal_oracle() {
    Check c("thermal_oracle", 1e-6);
    guarded(c, [&] {
        for (double T : {0.0, 0.1, 1.0, 10.0}) {
            for (double L : {0.3, 1.3, 6.0}) {
                const AtomPair atoms{1.0, 0.1, L};
                const double q = shifts::rcpi_quadrature(ThermalBath{T}, atoms, shifts::DickeState::S).delta_E;
                const double cf = shifts::rcpi_closed_minkowski(L, 1.0, 0.1, shifts::DickeState::S);
                c.relative({{"T", T}, {"L", L}}, q, cf);
            }
        }
    });
    return c;
}

Check asymptotics() {
    Check c("asymptotic_ratios", 0.0);
    guarded(c, [&] {
        const double far = shifts::rcpi_closed_desitter(100.0, 1.0, 1.0, 0.1, shifts::DickeState::S) /
                           shifts::rcpi_asymptotic(100.0, 1.0, 1.0, 0.1, shifts::Regime::Far, shifts::DickeState::S);
        c.record({{"regime", "far"}, {"L_over_kappa", 100.0}}, far, 1.0, std::max(0.0, std::abs(far - 1.0) - 0.01));
        const double near = shifts::rcpi_closed_desitter(0.01, 1.0, 1.0, 0.1, shifts::DickeState::S) /
                            shifts::rcpi_asymptotic(0.01, 1.0, 1.0, 0.1, shifts::Regime::Near, shifts::DickeState::S);
        c.record({{"regime", "near"}, {"L_over_kappa", 0.01}}, near, 1.0, std::max(0.0, std::abs(near - 1.0) - 1e-4));
    });
    return c;
}

Check flat_limit() {
    Check c("flat_limit", 1e-8);
    guarded(c, [&] {
        for (double L : {0.3, 1.0, 2.0, 7.0}) {
            const double ds = shifts::rcpi_closed_desitter(L, 1e6, 1.0, 0.1, shifts::DickeState::S);
            const double mk = shifts::rcpi_closed_minkowski(L, 1.0, 0.1, shifts::DickeState::S);
            c.relative({{"L", L}, {"kappa", 1e6}}, ds, mk);
        }
    });
    return c;
}

Check antisymmetry() {
    Check c("antisymmetry", 0.0);
    guarded(c, [&] {
        const std::vector<SpacetimeConfig> spacetimes = {DeSitterPatch{1.0, 0.0}, DeSitterPatch{2.0, 1.5},
                                                         ThermalBath{0.0}, ThermalBath{2.0}};
        for (const auto& st : spacetimes) {
            for (double L : {0.05, 0.8, 4.0}) {
                const AtomPair atoms{1.0, 0.1, L};
                const json point = {{"L", L}, {"de_sitter", is_de_sitter(st)}};
                for (auto method : {shifts::Method::ClosedForm, shifts::Method::Quadrature}) {
                    const bool closed = method == shifts::Method::ClosedForm;
                    const double s = closed ? shifts::rcpi_closed(st, atoms, shifts::DickeState::S).delta_E
                                            : shifts::rcpi_quadrature(st, atoms, shifts::DickeState::S).delta_E;
                    const double a = closed ? shifts::rcpi_closed(st, atoms, shifts::DickeState::A).delta_E
                                            : shifts::rcpi_quadrature(st, atoms, shifts::DickeState::A).delta_E;
                    c.record(point, a, -s, std::abs(a + s));
                }
            }
        }
    });
    return c;
}

Check generator_contracts() {
    Check c("lindblad_generator", 1e-14);
    guarded(c, [&] {
        const AtomPair atoms{1.0, 0.1, 0.8};
        const auto gen = liouvillian::assemble_generator(
            liouvillian::compute_coefficients(DeSitterPatch{1.0, 0.3}, atoms), atoms.omega0);
        std::mt19937_64 rng(20240617);
        std::normal_distribution<double> gauss;
        for (int k = 0; k < 8; ++k) {
            liouvillian::Matrix4 m;
            for (int i = 0; i < 16; ++i) m.data()[i] = {gauss(rng), gauss(rng)};
            const liouvillian::Matrix4 rho = m + m.adjoint();
            const liouvillian::Matrix4 d = liouvillian::apply_generator(gen, rho);
            const double scale = rho.norm();
            c.record({{"sample", k}, {"property", "trace"}}, std::abs(d.trace()), 0.0, std::abs(d.trace()) / scale);
            const double herm = (d - d.adjoint()).norm() / scale;
            c.record({{"sample", k}, {"property", "hermiticity"}}, herm, 0.0, herm);
        }
        const liouvillian::Matrix4 h = liouvillian::lamb_shift_hamiltonian(gen);
        const double herm = (h - h.adjoint()).norm();
        c.record({{"property", "H_LS hermitian"}}, herm, 0.0, herm);
    });
    return c;
}

Check trajectories(Level level) {
    Check c("lindblad_trajectories", 0.0);
    guarded(c, [&] {
        const AtomPair atoms{1.0, 0.1, 1.0};
        const auto gen =
            liouvillian::assemble_generator(liouvillian::compute_coefficients(DeSitterPatch{1.0, 0.0}, atoms), 1.0);
        const double tau_max = level == Level::Full ? 2000.0 : 200.0;
        std::vector<double> grid;
        for (int i = 0; i <= 50; ++i) grid.push_back(tau_max * i / 50.0);
        for (auto state : {shifts::DickeState::G, shifts::DickeState::E, shifts::DickeState::S, shifts::DickeState::A}) {
            const auto traj =
                liouvillian::evolve(liouvillian::TwoQubitState::pure(shifts::dicke_vector(state)), gen, grid);
            double trace = 0.0, herm = 0.0, min_eig = 0.0;
            for (const auto& p : traj.points) {
                trace = std::max(trace, std::abs(p.trace - 1.0));
                herm = std::max(herm, p.hermiticity_defect);
                min_eig = std::min(min_eig, p.min_eigenvalue);
            }
            const json point = {{"initial", std::string(shifts::to_string(state))}};
            c.record(point, trace, 0.0, std::max(0.0, trace - 1e-9));
            c.record(point, herm, 0.0, std::max(0.0, herm - 1e-10));
            c.record(point, min_eig, 0.0, std::max(0.0, -1e-8 - min_eig));
        }
    });
    return c;
}

Check steady_state() {
    Check c("single_atom_steady_state", 1e-4);
    guarded(c, [&] {
        const AtomPair atoms{1.0, 0.1, 1.0};
        const auto gen =
            liouvillian::assemble_generator(liouvillian::compute_coefficients(DeSitterPatch{1.0, 0.0}, atoms), 1.0);
        const std::vector<double> grid = {0.0, 12500.0, 25000.0};
        const auto traj =
            liouvillian::evolve(liouvillian::TwoQubitState::pure(shifts::dicke_vector(shifts::DickeState::E)), gen, grid);
        const auto reduced = liouvillian::partial_trace(traj.points.back().rho, 1);
        const double ratio = reduced(1, 1).real() / reduced(0, 0).real();
        const double ref = std::exp(-2.0 * pi);
        c.record({{"omega0_kappa", 1.0}, {"tau", 25000.0}}, ratio, ref, std::abs(ratio - ref));
    });
    return c;
}

} // namespace

json run_validation(Level level) {
    std::vector<Check> checks;
    checks.push_back(kms_de_sitter());
    checks.push_back(kms_thermal());
    checks.push_back(temperature_decomposition(level == Level::Full ? 20 : 5));
    checks.push_back(oracle_grid(level));
    checks.push_back(thermal_independence());
    checks.push_back(thermal_oracle());
    checks.push_back(asymptotics());
    checks.push_back(flat_limit());
    checks.push_back(antisymmetry());
    checks.push_back(generator_contracts());
    checks.push_back(trajectories(level));
    if (level == Level::Full) {
        checks.push_back(steady_state());
    }

    json report;
    report["level"] = level == Level::Full ? "full" : "quick";
    bool all = true;
    report["checks"] = json::array();
    for (const auto& c : checks) {
        all = all && c.passed();
        report["checks"].push_back(c.report());
    }
    report["passed"] = all;
    return report;
}

int cmd_validate(Level level, std::ostream& out) {
    const json report = run_validation(level);
    out << report.dump(2) << '\n';
    return report["passed"].get<bool>() ? Ok : ValidationFailure;
}

} // namespace rcpi::cli
