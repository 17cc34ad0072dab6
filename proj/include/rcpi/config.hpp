// config.hpp: run configuration read from a flat JSON document
//
// Keys (all optional unless noted):
//   spacetime      "de_sitter" | "thermal_minkowski"          (required)
//   alpha, r       de Sitter radius and static radius of both atoms
//   temperature    thermal bath temperature
//   omega0, mu     transition frequency and coupling
//   L | delta_theta  separation, or the angle at radius r giving L = 2 r sin(delta_theta / 2)
//   sweep_L_min, sweep_L_max, sweep_n_points, sweep_spacing ("log" | "linear"), sweep_method
//   evolve_initial ("G" | "E" | "S" | "A"), evolve_tau_max, evolve_tau_step,
//   evolve_cutoff, evolve_include_same_atom
//   window_L_min, window_L_max, threshold_far_lo, threshold_far_hi, threshold_flat_lo, threshold_flat_hi
//   quad_abs_tol, quad_rel_tol, ode_abs_tol, ode_rel_tol
//   output (path, "-" for stdout), format ("csv" | "json")

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcpi/discriminator.hpp"
#include "rcpi/geometry.hpp"
#include "rcpi/shifts.hpp"

namespace rcpi::config {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error(field.empty() ? message : "config field '" + field + "': " + message), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class Spacing { Log, Linear };
enum class SweepMethod { ClosedForm, Quadrature };
enum class Format { Csv, Json };

struct SweepConfig {
    double L_min{0.0};
    double L_max{0.0};
    std::size_t n_points{200};
    Spacing spacing{Spacing::Log};
    SweepMethod method{SweepMethod::ClosedForm};

    bool operator==(const SweepConfig&) const = default;
};

struct EvolveConfig {
    shifts::DickeState initial{shifts::DickeState::S};
    double tau_max{0.0};
    double tau_step{0.0}; // output stride
    std::optional<double> cutoff;
    bool include_same_atom{false};

    bool operator==(const EvolveConfig&) const = default;
};

struct Tolerances {
    double quad_abs{1e-13};
    double quad_rel{1e-11};
    double ode_abs{1e-12};
    double ode_rel{1e-10};

    bool operator==(const Tolerances&) const = default;
};

struct DiscriminateConfig {
    std::optional<double> window_L_min;
    std::optional<double> window_L_max;
    discriminator::Thresholds thresholds{};

    bool operator==(const DiscriminateConfig& o) const {
        const auto& a = thresholds;
        const auto& b = o.thresholds;
        return window_L_min == o.window_L_min && window_L_max == o.window_L_max && a.far_lo == b.far_lo &&
               a.far_hi == b.far_hi && a.flat_lo == b.flat_lo && a.flat_hi == b.flat_hi;
    }
};

struct RunConfig {
    SpacetimeConfig spacetime{DeSitterPatch{}};
    AtomPair atoms{};
    std::optional<double> delta_theta; // when set, atoms.L was derived from it
    std::optional<SweepConfig> sweep;
    std::optional<EvolveConfig> evolve;
    DiscriminateConfig discriminate{};
    Tolerances tolerances{};
    std::string output{"-"};
    Format format{Format::Csv};

    bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError naming the offending field; JSON syntax errors report the byte offset.
RunConfig parse(const nlohmann::json& doc);
RunConfig parse_text(const std::string& text);
RunConfig load(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

// Sample positions of the sweep, strictly increasing, endpoints exact.
std::vector<double> sweep_grid(const SweepConfig& sweep);

quadrature::HalfLineOptions quadrature_options(const Tolerances& tol);

std::optional<discriminator::Window> fit_window(const DiscriminateConfig& d);

} // namespace rcpi::config
