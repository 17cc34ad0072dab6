// quadrature.cpp: adaptive, principal-value and oscillatory-tail quadrature

#include "rcpi/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "rcpi/spectral.hpp"

namespace rcpi::quadrature {

QuadratureError::QuadratureError(const std::string& what, std::size_t lobes, double last_error,
                                 std::size_t evaluations)
    : std::runtime_error(what + " (lobes=" + std::to_string(lobes) + ", last_error=" +
                         std::to_string(last_error) + ", evaluations=" + std::to_string(evaluations) + ")"),
      lobes_(lobes), last_error_(last_error), evaluations_(evaluations) {}

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = std::numeric_limits<double>::min();

// Kronrod abscissae on [0, 1) in decreasing order; xgk[7] = 0 is the centre.
// Odd entries are the 7-point Gauss abscissae.
constexpr std::array<double, 8> xgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool at_roundoff; // error estimate is the rounding floor; bisection cannot help
};

Segment kronrod_segment(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, 7> f1{}, f2{};

    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        f1[j] = f(c - x);
        f2[j] = f(c + x);
        resk += wgk[j] * (f1[j] + f2[j]);
        resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            resg += wg[j / 2] * (f1[j] + f2[j]);
        }
    }
    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double ah = std::abs(h);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    bool at_roundoff = false;
    if (resabs > tiny / (50.0 * eps) && 50.0 * eps * resabs >= err) {
        err = 50.0 * eps * resabs;
        at_roundoff = true;
    }
    if (!std::isfinite(resk)) {
        throw QuadratureError("non-finite integrand on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                              0, std::numeric_limits<double>::infinity(), 0);
    }
    return {a, b, resk * h, err, at_roundoff};
}

bool larger_error(const Segment& x, const Segment& y) { return x.error < y.error; }

// int_0^1 of a function of t, used for the semi-infinite map
Estimate mapped_semi_infinite(const Integrand& f, double a, const AdaptiveOptions& opts) {
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double v = f(a + t / s);
        return v == 0.0 ? 0.0 : v / (s * s);
    };
    return gauss_kronrod(g, 0.0, 1.0, opts);
}

// Iterated Aitken delta-squared on a sequence of partial sums.
double iterated_aitken(std::span<const double> sums, std::size_t max_depth, std::size_t& depth) {
    std::vector<double> cur(sums.begin(), sums.end());
    depth = 0;
    while (cur.size() >= 3 && depth < max_depth) {
        std::vector<double> next;
        next.reserve(cur.size() - 2);
        for (std::size_t i = 0; i + 2 < cur.size(); ++i) {
            const double d1 = cur[i + 1] - cur[i];
            const double d2 = cur[i + 2] - cur[i + 1];
            const double den = d2 - d1;
            const double step = d2 * d2 / den;
            next.push_back(den != 0.0 && std::isfinite(step) ? cur[i + 2] - step : cur[i + 2]);
        }
        cur = std::move(next);
        ++depth;
    }
    return cur.back();
}

} // namespace

Estimate gauss_kronrod(const Integrand& f, double a, double b, const AdaptiveOptions& opts) {
    Estimate out;
    if (a == b) {
        return out;
    }
    std::vector<Segment> heap;
    heap.push_back(kronrod_segment(f, a, b));
    out.evaluations = 15;

    auto totals = [&] {
        double v = 0.0, e = 0.0;
        for (const auto& s : heap) {
            v += s.value;
            e += s.error;
        }
        return std::pair{v, e};
    };

    auto [value, error] = totals();
    while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
        std::pop_heap(heap.begin(), heap.end(), larger_error);
        const Segment worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        // no room left to bisect: accept what we have
        if (worst.at_roundoff || std::abs(worst.b - worst.a) <= 8.0 * eps * std::max(std::abs(mid), tiny) ||
            mid == worst.a || mid == worst.b) {
            std::push_heap(heap.begin(), heap.end(), larger_error);
            break;
        }
        if (out.evaluations + 30 > opts.max_evaluations) {
            throw QuadratureError("adaptive Gauss-Kronrod exceeded its evaluation budget", 0, error,
                                  out.evaluations);
        }
        heap.pop_back();
        const Segment left = kronrod_segment(f, worst.a, mid);
        const Segment right = kronrod_segment(f, mid, worst.b);
        out.evaluations += 30;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), larger_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), larger_error);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        // running sums drift; resum exactly every so often
        if (heap.size() % 64 == 0) {
            std::tie(value, error) = totals();
        }
    }
    std::tie(out.value, out.error) = totals();
    return out;
}

Estimate principal_value(const Integrand& f, const PVIntegralSpec& spec, Interval support) {
    const double lo = support.lo;
    const double hi = spec.cutoff ? std::min(support.hi, *spec.cutoff) : support.hi;
    const double p = spec.pole;
    if (!(spec.abs_tol > 0.0 && spec.rel_tol > 0.0)) {
        throw std::invalid_argument("principal value tolerances must be positive");
    }
    if (!(lo < p && p < hi)) {
        throw std::invalid_argument("pole " + std::to_string(p) + " must lie strictly inside the support [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const double room = std::min(p - lo, hi - p);
    double delta = spec.window ? std::min(*spec.window, room) : 0.5 * room;
    if (!(delta > 0.0)) {
        throw std::invalid_argument("principal value window must be positive");
    }

    AdaptiveOptions sub{spec.abs_tol / 4.0, spec.rel_tol / 4.0, spec.max_evaluations};
    std::size_t evaluations = 0;
    // the offset is snapped so that p + a and p - a are both exact
    auto folded = [&](double u) {
        const double a = (p + u) - p;
        return a == 0.0 ? 0.0 : f(p + a) + f(p - a);
    };
    auto at = [&](double d) {
        sub.max_evaluations = spec.max_evaluations > evaluations ? spec.max_evaluations - evaluations : 0;
        Estimate total;
        for (const Estimate& piece : {gauss_kronrod(f, lo, p - d, sub), gauss_kronrod(folded, 0.0, d, sub),
                                      gauss_kronrod(f, p + d, hi, sub)}) {
            total.value += piece.value;
            total.error += piece.error;
            total.evaluations += piece.evaluations;
        }
        evaluations += total.evaluations;
        return total;
    };

    Estimate prev = at(delta);
    double diff = std::numeric_limits<double>::infinity();
    for (int k = 0; k < spec.max_halvings; ++k) {
        delta *= 0.5;
        const Estimate cur = at(delta);
        diff = std::abs(cur.value - prev.value);
        prev = cur;
        if (diff <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur.value))) {
            break;
        }
    }
    return {prev.value, prev.error + diff, evaluations};
}

TailEstimate oscillatory_tail(const Integrand& f, double first_zero, double asymptotic_period,
                              const TailOptions& opts) {
    if (!(asymptotic_period > 0.0) || !std::isfinite(asymptotic_period)) {
        throw std::invalid_argument("asymptotic period must be positive and finite");
    }
    if (opts.initial_lobes < 4 || opts.max_lobes < opts.initial_lobes) {
        throw std::invalid_argument("tail lobe budget must allow at least 4 lobes");
    }
    const double h = 0.5 * asymptotic_period;
    const AdaptiveOptions lobe_opts{0.0, 1e-14, opts.max_evaluations};

    std::vector<double> lobes;
    std::vector<double> sums;
    double lobe_error = 0.0;
    std::size_t evaluations = 0;
    TailEstimate best;
    best.error = std::numeric_limits<double>::infinity();

    for (std::size_t budget = opts.initial_lobes; budget <= opts.max_lobes; budget *= 2) {
        while (lobes.size() < budget) {
            const double a = first_zero + static_cast<double>(lobes.size()) * h;
            const Estimate lobe = gauss_kronrod(f, a, a + h, lobe_opts);
            evaluations += lobe.evaluations;
            lobe_error += lobe.error;
            lobes.push_back(lobe.value);
            sums.push_back((sums.empty() ? 0.0 : sums.back()) + lobe.value);
            if (evaluations > opts.max_evaluations) {
                throw QuadratureError("oscillatory tail exceeded its evaluation budget", lobes.size(), best.error,
                                      evaluations);
            }
        }

        const std::size_t window = std::min(sums.size() - 1, 2 * opts.max_depth + 1);
        const std::span<const double> all(sums);
        std::size_t depth = 0, depth_prev = 0;
        const double accel = iterated_aitken(all.subspan(sums.size() - window), opts.max_depth, depth);
        const double accel_prev = iterated_aitken(all.subspan(sums.size() - 1 - window, window), opts.max_depth, depth_prev);

        double magnitude = 0.0;
        for (double s : sums) {
            magnitude = std::max(magnitude, std::abs(s));
        }
        const double error = std::abs(accel - accel_prev) + lobe_error + 64.0 * eps * magnitude;

        if (error < best.error) {
            best = {accel, error, evaluations, lobes.size(), depth};
        }
        if (best.error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(best.value))) {
            break;
        }

        // lobes must shrink for the improper integral to exist
        const std::size_t quarter = lobes.size() / 4;
        double head = 0.0, tail = 0.0;
        for (std::size_t i = 0; i < quarter; ++i) {
            head = std::max(head, std::abs(lobes[i]));
            tail = std::max(tail, std::abs(lobes[lobes.size() - 1 - i]));
        }
        if (!(tail < head)) {
            throw QuadratureError("oscillatory tail: lobe magnitudes are not decreasing", lobes.size(), error,
                                  evaluations);
        }
    }
    best.evaluations = evaluations;
    return best;
}

HalfLineEstimate half_line_principal_value(const Integrand& f, double omega0, double half_period,
                                           const HalfLineOptions& opts) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("pole must be at a positive frequency");
    }
    if (!(half_period > 0.0)) {
        throw std::invalid_argument("half period must be positive");
    }
    HalfLineEstimate out;
    PVIntegralSpec spec;
    spec.pole = omega0;
    spec.abs_tol = opts.abs_tol;
    spec.rel_tol = opts.rel_tol;

    if (std::isfinite(half_period)) {
        const double delta = std::min(0.5 * omega0, half_period);
        out.split = half_period * std::ceil((omega0 + delta) / half_period);
        spec.window = delta;
        const Estimate pv = principal_value(f, spec, {0.0, out.split});
        TailOptions tail_opts = opts.tail;
        tail_opts.abs_tol = std::max(tail_opts.abs_tol, opts.abs_tol);
        const TailEstimate tail = oscillatory_tail(f, out.split, 2.0 * half_period, tail_opts);
        out.pole_part = pv.value;
        out.tail_part = tail.value;
        out.error = pv.error + tail.error;
        out.lobes = tail.lobes;
        out.evaluations = pv.evaluations + tail.evaluations;
    } else {
        out.split = 2.0 * omega0;
        spec.window = 0.5 * omega0;
        const Estimate pv = principal_value(f, spec, {0.0, out.split});
        const Estimate tail = mapped_semi_infinite(f, out.split, {opts.abs_tol, opts.rel_tol, 2'000'000});
        out.pole_part = pv.value;
        out.tail_part = tail.value;
        out.error = pv.error + tail.error;
        out.evaluations = pv.evaluations + tail.evaluations;
    }
    out.value = out.pole_part + out.tail_part;
    return out;
}

double oscillation_rate(const SpacetimeConfig& spacetime, double L) {
    if (const auto* patch = std::get_if<DeSitterPatch>(&spacetime)) {
        const double k = geometry::kappa(*patch);
        return 2.0 * k * std::asinh(0.5 * L / k);
    }
    return L;
}

HalfLineEstimate rcpi_integral(const SpacetimeConfig& spacetime, double omega0, double L,
                               const HalfLineOptions& opts) {
    validate(spacetime);
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("transition frequency must be positive");
    }
    if (!(L > 0.0)) {
        throw std::invalid_argument("separation must be positive");
    }

    Integrand cross;
    double amplitude = 1.0 / L; // sup of |w f(w, L/2)|
    if (const auto* patch = std::get_if<DeSitterPatch>(&spacetime)) {
        const double k = geometry::kappa(*patch);
        const double x = 0.5 * L / k;
        amplitude /= std::sqrt(1.0 + x * x);
        cross = [k, L](double w) { return spectral::fourier_desitter_cross(w, k, L); };
    } else {
        const double T = std::get<ThermalBath>(spacetime).temperature;
        cross = [T, L](double w) { return spectral::fourier_thermal_minkowski(w, T, L, spectral::Pair::Cross); };
    }
    const double two_pi = 2.0 * std::numbers::pi;
    auto integrand = [&cross, omega0, two_pi](double w) {
        const double odd_part = two_pi * (cross(w) - cross(-w));
        return odd_part * (1.0 / (w - omega0) + 1.0 / (w + omega0));
    };

    HalfLineOptions scaled = opts;
    scaled.abs_tol = opts.abs_tol * amplitude;
    scaled.tail.abs_tol = opts.tail.abs_tol * amplitude;
    const double half_period = std::numbers::pi / oscillation_rate(spacetime, L);
    try {
        return half_line_principal_value(integrand, omega0, half_period, scaled);
    } catch (const QuadratureError& e) {
        throw QuadratureError(std::string("rcpi integral at omega0=") + std::to_string(omega0) +
                                  ", L=" + std::to_string(L) + ": " + e.what(),
                              e.lobes(), e.last_error(), e.evaluations());
    }
}

} // namespace rcpi::quadrature
