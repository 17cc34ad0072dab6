// discriminator.hpp: envelope power-law fits that tell a curved universe from a warm flat one

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rcpi::discriminator {

struct SweepRecord {
    double L{0.0};
    double delta_E_S{0.0};
    double delta_E_A{0.0};
};

struct EnvelopePoint {
    double L{0.0};
    double magnitude{0.0};
};

struct Window {
    double L_min{0.0};
    double L_max{0.0};
};

struct PowerLawFit {
    double exponent{0.0};     // |dE| ~ amplitude / L^exponent
    double amplitude{0.0};
    double residual_rms{0.0}; // in natural-log units
    Window window{};
    std::size_t n_points{0};
};

enum class Verdict { DeSitterFar, FlatOrThermal, Indeterminate };

std::string_view to_string(Verdict verdict);

struct Thresholds {
    double far_lo{1.8};
    double far_hi{2.2};
    double flat_lo{0.8};
    double flat_hi{1.2};
};

struct Classification {
    Verdict verdict{Verdict::Indeterminate};
    std::string notes;
};

class InsufficientOscillations : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument unless L is positive and strictly increasing and
// dE_A = -dE_S within 1e-10 relative on every row.
void check_records(std::span<const SweepRecord> samples);

// Local maxima of |dE_S|, refined by a parabola through each maximum and its two
// neighbours in (log L, log |dE_S|). Needs at least 3 sign changes or 5 interior maxima.
std::vector<EnvelopePoint> extract_envelope(std::span<const SweepRecord> samples);

// Least-squares line through (log L, log |dE|) over the points inside the window
// (all points when no window is given). Needs 4 points with positive magnitudes.
PowerLawFit fit_power_law(std::span<const EnvelopePoint> points, std::optional<Window> window = std::nullopt);

Classification classify(const PowerLawFit& fit, const Thresholds& thresholds = {});

} // namespace rcpi::discriminator
