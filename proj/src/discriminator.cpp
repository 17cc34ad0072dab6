// discriminator.cpp: envelope extraction, power-law fit and verdict

#include "rcpi/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rcpi::discriminator {

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::DeSitterFar: return "DeSitterFar";
    case Verdict::FlatOrThermal: return "FlatOrThermal";
    case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

void check_records(std::span<const SweepRecord> samples) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SweepRecord& s = samples[i];
        if (!(s.L > 0.0) || !std::isfinite(s.L)) {
            throw std::invalid_argument("row " + std::to_string(i + 1) + ": L must be positive");
        }
        if (i > 0 && !(s.L > samples[i - 1].L)) {
            throw std::invalid_argument("row " + std::to_string(i + 1) + ": L must be strictly increasing");
        }
        const double scale = std::max(std::abs(s.delta_E_S), std::abs(s.delta_E_A));
        if (std::abs(s.delta_E_S + s.delta_E_A) > 1e-10 * scale) {
            throw std::invalid_argument("row " + std::to_string(i + 1) + ": dE_A is not -dE_S");
        }
    }
}

std::vector<EnvelopePoint> extract_envelope(std::span<const SweepRecord> samples) {
    const std::size_t n = samples.size();
    std::size_t sign_changes = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if ((samples[i].delta_E_S > 0.0) != (samples[i - 1].delta_E_S > 0.0) &&
            samples[i].delta_E_S != 0.0 && samples[i - 1].delta_E_S != 0.0) {
            ++sign_changes;
        }
    }

    std::vector<EnvelopePoint> out;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double y0 = std::abs(samples[i - 1].delta_E_S);
        const double y1 = std::abs(samples[i].delta_E_S);
        const double y2 = std::abs(samples[i + 1].delta_E_S);
        if (!(y1 > y0 && y1 >= y2)) {
            continue;
        }
        EnvelopePoint p{samples[i].L, y1};
        if (y0 > 0.0 && y2 > 0.0) {
            const double u0 = std::log(samples[i - 1].L), u1 = std::log(samples[i].L), u2 = std::log(samples[i + 1].L);
            const double v0 = std::log(y0), v1 = std::log(y1), v2 = std::log(y2);
            // Newton divided differences of the interpolating parabola
            const double d01 = (v1 - v0) / (u1 - u0);
            const double d12 = (v2 - v1) / (u2 - u1);
            const double c2 = (d12 - d01) / (u2 - u0);
            if (c2 < 0.0) {
                const double c1 = d01 - c2 * (u0 + u1);
                const double u = -c1 / (2.0 * c2);
                if (u >= u0 && u <= u2) {
                    const double v = v0 + d01 * (u - u0) + c2 * (u - u0) * (u - u1);
                    p = {std::exp(u), std::exp(v)};
                }
            }
        }
        out.push_back(p);
    }

    if (sign_changes < 3 && out.size() < 5) {
        std::ostringstream msg;
        msg << "insufficient oscillations: " << sign_changes << " sign changes and " << out.size()
            << " local maxima in the sweep; widen the L window";
        throw InsufficientOscillations(msg.str());
    }
    return out;
}

PowerLawFit fit_power_law(std::span<const EnvelopePoint> points, std::optional<Window> window) {
    if (window && !(window->L_min < window->L_max)) {
        throw std::invalid_argument("fit window needs L_min < L_max");
    }
    std::vector<double> x, y;
    for (const EnvelopePoint& p : points) {
        if (window && (p.L < window->L_min || p.L > window->L_max)) {
            continue;
        }
        if (!(p.magnitude > 0.0) || !(p.L > 0.0)) {
            throw std::invalid_argument("power-law fit needs positive L and magnitude");
        }
        x.push_back(std::log(p.L));
        y.push_back(std::log(p.magnitude));
    }
    const std::size_t n = x.size();
    if (n < 4) {
        throw std::invalid_argument("power-law fit needs at least 4 envelope points in the window, got " +
                                    std::to_string(n));
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("power-law fit needs distinct L values");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ss += r * r;
    }

    PowerLawFit fit;
    fit.exponent = -slope;
    fit.amplitude = std::exp(intercept);
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    fit.n_points = n;
    if (window) {
        fit.window = *window;
    } else {
        fit.window = {std::exp(*std::min_element(x.begin(), x.end())), std::exp(*std::max_element(x.begin(), x.end()))};
    }
    return fit;
}

Classification classify(const PowerLawFit& fit, const Thresholds& t) {
    std::ostringstream notes;
    notes.precision(4);
    Classification out;
    if (fit.exponent >= t.far_lo && fit.exponent <= t.far_hi) {
        out.verdict = Verdict::DeSitterFar;
        notes << "exponent " << fit.exponent << " in [" << t.far_lo << ", " << t.far_hi
              << "]: 1/L^2 envelope, separation beyond the curvature scale";
    } else if (fit.exponent >= t.flat_lo && fit.exponent <= t.flat_hi) {
        out.verdict = Verdict::FlatOrThermal;
        notes << "exponent " << fit.exponent << " in [" << t.flat_lo << ", " << t.flat_hi
              << "]: 1/L envelope, flat at any temperature or de Sitter below the curvature scale";
    } else {
        out.verdict = Verdict::Indeterminate;
        notes << "exponent " << fit.exponent << " outside both bands; the window may straddle the crossover";
    }
    notes << "; residual rms " << fit.residual_rms << " over " << fit.n_points << " points";
    out.notes = notes.str();
    return out;
}

} // namespace rcpi::discriminator
