// quadrature.hpp: principal-value and oscillatory-tail integration
//
// The numerical route to the interaction energy. Everything here is checked
// against the closed forms in shifts.hpp, so it must not share code with them
// beyond the spectral functions that define the integrand.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "rcpi/geometry.hpp"

namespace rcpi::quadrature {

using Integrand = std::function<double(double)>;

struct Estimate {
    double value{0.0};
    double error{0.0};
    std::size_t evaluations{0};
};

// Raised when an integration cannot meet its contract within budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, std::size_t lobes, double last_error, std::size_t evaluations);

    std::size_t lobes() const { return lobes_; }
    double last_error() const { return last_error_; }
    std::size_t evaluations() const { return evaluations_; }

private:
    std::size_t lobes_;
    double last_error_;
    std::size_t evaluations_;
};

struct AdaptiveOptions {
    double abs_tol{1e-14};
    double rel_tol{1e-12};
    std::size_t max_evaluations{500'000};
};

// Globally adaptive 7/15-point Gauss-Kronrod on a finite interval.
Estimate gauss_kronrod(const Integrand& f, double a, double b, const AdaptiveOptions& opts = {});

struct Interval {
    double lo{0.0};
    double hi{0.0};
};

struct PVIntegralSpec {
    double pole{1.0};
    std::optional<double> cutoff; // clips the upper end of the support when set
    double abs_tol{1e-13};
    double rel_tol{1e-11};
    std::optional<double> window; // initial symmetric window radius around the pole
    int max_halvings{8};
    std::size_t max_evaluations{2'000'000};
};

// Cauchy principal value of f over the support, f having a simple pole at spec.pole.
// Inside |w - pole| < delta the two sides are folded, int_0^delta [f(pole + u) + f(pole - u)] du,
// and delta is halved until two successive values agree.
Estimate principal_value(const Integrand& f, const PVIntegralSpec& spec, Interval support);

struct TailOptions {
    std::size_t initial_lobes{32};
    std::size_t max_lobes{16'384};
    std::size_t max_depth{12}; // iterated Aitken levels
    double abs_tol{1e-14};
    double rel_tol{1e-11};
    std::size_t max_evaluations{2'000'000};
};

struct TailEstimate {
    double value{0.0};
    double error{0.0};
    std::size_t evaluations{0};
    std::size_t lobes{0};
    std::size_t depth{0};
};

// int_{first_zero}^inf f for an integrand that changes sign every half of asymptotic_period
// from first_zero on. Lobe integrals are summed and the partial sums accelerated with
// iterated Aitken. The lobe budget doubles until the tolerance is met; the returned
// value is the stage with the smallest error estimate, so a larger budget never
// reports a larger error.
TailEstimate oscillatory_tail(const Integrand& f, double first_zero, double asymptotic_period,
                              const TailOptions& opts = {});

struct HalfLineOptions {
    double abs_tol{1e-13};
    double rel_tol{1e-11};
    TailOptions tail{};
};

struct HalfLineEstimate {
    double value{0.0};
    double error{0.0};
    double pole_part{0.0};
    double tail_part{0.0};
    double split{0.0}; // where the oscillatory tail takes over
    std::size_t lobes{0};
    std::size_t evaluations{0};
};

// PV int_0^inf f(w) dw with a simple pole at omega0. Beyond omega0 the integrand must
// change sign at integer multiples of half_period; pass +inf for a non-oscillating
// integrand that decays fast enough for a mapped semi-infinite rule.
HalfLineEstimate half_line_principal_value(const Integrand& f, double omega0, double half_period,
                                           const HalfLineOptions& opts = {});

// Phase rate b of the cross-atom factor, f ~ sin(b w): 2 kappa asinh(L / 2 kappa) in
// de Sitter, L in flat space.
double oscillation_rate(const SpacetimeConfig& spacetime, double L);

// int_0^inf (w / (w - w0) + w / (w + w0)) f(w, L / 2) dw, i.e. -(4 pi^2 / mu^2) dE_S.
// The integrand is built from the cross-atom spectrum of the given spacetime as
// (1 / (w - w0) + 1 / (w + w0)) * 2 pi [G12(w) - G12(-w)], which folds the full-line
// Hilbert transform onto the half line.
HalfLineEstimate rcpi_integral(const SpacetimeConfig& spacetime, double omega0, double L,
                               const HalfLineOptions& opts = {});

} // namespace rcpi::quadrature
