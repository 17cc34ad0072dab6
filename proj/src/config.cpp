// config.cpp: JSON run configuration parsing and serialisation

#include "rcpi/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace rcpi::config {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "spacetime",        "alpha",           "r",                 "temperature",
        "omega0",           "mu",              "L",                 "delta_theta",
        "sweep_L_min",      "sweep_L_max",     "sweep_n_points",    "sweep_spacing",
        "sweep_method",     "evolve_initial",  "evolve_tau_max",    "evolve_tau_step",
        "evolve_cutoff",    "evolve_include_same_atom",             "window_L_min",
        "window_L_max",     "threshold_far_lo", "threshold_far_hi", "threshold_flat_lo",
        "threshold_flat_hi", "quad_abs_tol",   "quad_rel_tol",      "ode_abs_tol",
        "ode_rel_tol",      "output",          "format"};
    return keys;
}

std::optional<double> number(const json& doc, const std::string& key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw ConfigError(key, "expected a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(key, "must be finite");
    }
    return v;
}

double positive(const json& doc, const std::string& key, double fallback) {
    const double v = number(doc, key).value_or(fallback);
    if (!(v > 0.0)) {
        throw ConfigError(key, "must be positive");
    }
    return v;
}

std::optional<std::string> text(const json& doc, const std::string& key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw ConfigError(key, "expected a string");
    }
    return it->get<std::string>();
}

bool has_prefix(const json& doc, const std::string& prefix) {
    for (const auto& item : doc.items()) {
        if (item.key().rfind(prefix, 0) == 0) {
            return true;
        }
    }
    return false;
}

shifts::DickeState dicke_from(const std::string& s) {
    if (s == "G") return shifts::DickeState::G;
    if (s == "E") return shifts::DickeState::E;
    if (s == "S") return shifts::DickeState::S;
    if (s == "A") return shifts::DickeState::A;
    throw ConfigError("evolve_initial", "expected one of G, E, S, A, got '" + s + "'");
}

} // namespace

RunConfig parse(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("", "configuration must be a JSON object");
    }
    for (const auto& item : doc.items()) {
        if (!known_keys().count(item.key())) {
            throw ConfigError(item.key(), "unknown key");
        }
    }

    RunConfig cfg;
    const auto kind = text(doc, "spacetime");
    if (!kind) {
        throw ConfigError("spacetime", "required (\"de_sitter\" or \"thermal_minkowski\")");
    }
    if (*kind == "de_sitter") {
        if (doc.contains("temperature")) {
            throw ConfigError("temperature", "not a de Sitter parameter; set exactly one spacetime");
        }
        DeSitterPatch patch{positive(doc, "alpha", 1.0), number(doc, "r").value_or(0.0)};
        try {
            validate(patch);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(patch.r >= patch.alpha || patch.r < 0.0 ? "r" : "alpha", e.what());
        }
        cfg.spacetime = patch;
    } else if (*kind == "thermal_minkowski") {
        for (const char* key : {"alpha", "r"}) {
            if (doc.contains(key)) {
                throw ConfigError(key, "not a thermal Minkowski parameter; set exactly one spacetime");
            }
        }
        const double T = number(doc, "temperature").value_or(0.0);
        if (!(T >= 0.0)) {
            throw ConfigError("temperature", "must be non-negative");
        }
        cfg.spacetime = ThermalBath{T};
    } else {
        throw ConfigError("spacetime", "expected \"de_sitter\" or \"thermal_minkowski\", got \"" + *kind + "\"");
    }

    cfg.atoms.omega0 = positive(doc, "omega0", cfg.atoms.omega0);
    cfg.atoms.mu = positive(doc, "mu", cfg.atoms.mu);
    if (doc.contains("L") && doc.contains("delta_theta")) {
        throw ConfigError("delta_theta", "give either L or delta_theta, not both");
    }
    if (doc.contains("delta_theta")) {
        const auto* patch = std::get_if<DeSitterPatch>(&cfg.spacetime);
        if (!patch) {
            throw ConfigError("delta_theta", "angular separation needs a de Sitter radius r");
        }
        const double dtheta = *number(doc, "delta_theta");
        try {
            cfg.atoms.L = geometry::euclidean_separation(patch->r, dtheta);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("delta_theta", e.what());
        }
        cfg.delta_theta = dtheta;
    } else {
        cfg.atoms.L = positive(doc, "L", cfg.atoms.L);
    }

    if (has_prefix(doc, "sweep_")) {
        SweepConfig s;
        if (!doc.contains("sweep_L_min") || !doc.contains("sweep_L_max")) {
            throw ConfigError(doc.contains("sweep_L_min") ? "sweep_L_max" : "sweep_L_min", "required for a sweep");
        }
        s.L_min = positive(doc, "sweep_L_min", 0.0);
        s.L_max = positive(doc, "sweep_L_max", 0.0);
        if (!(s.L_min < s.L_max)) {
            throw ConfigError("sweep_L_max", "must exceed sweep_L_min");
        }
        if (doc.contains("sweep_n_points")) {
            const json& n = doc.at("sweep_n_points");
            if (!n.is_number_integer() || n.get<long long>() < 2) {
                throw ConfigError("sweep_n_points", "expected an integer >= 2");
            }
            s.n_points = n.get<std::size_t>();
        }
        const std::string spacing = text(doc, "sweep_spacing").value_or("log");
        if (spacing == "log") {
            s.spacing = Spacing::Log;
        } else if (spacing == "linear") {
            s.spacing = Spacing::Linear;
        } else {
            throw ConfigError("sweep_spacing", "expected \"log\" or \"linear\"");
        }
        const std::string method = text(doc, "sweep_method").value_or("closed_form");
        if (method == "closed_form") {
            s.method = SweepMethod::ClosedForm;
        } else if (method == "quadrature") {
            s.method = SweepMethod::Quadrature;
        } else {
            throw ConfigError("sweep_method", "expected \"closed_form\" or \"quadrature\"");
        }
        cfg.sweep = s;
    }

    if (has_prefix(doc, "evolve_")) {
        EvolveConfig e;
        if (!doc.contains("evolve_tau_max")) {
            throw ConfigError("evolve_tau_max", "required for an evolution run");
        }
        e.tau_max = positive(doc, "evolve_tau_max", 0.0);
        e.tau_step = positive(doc, "evolve_tau_step", e.tau_max / 100.0);
        if (e.tau_step > e.tau_max) {
            throw ConfigError("evolve_tau_step", "must not exceed evolve_tau_max");
        }
        e.initial = dicke_from(text(doc, "evolve_initial").value_or("S"));
        if (doc.contains("evolve_cutoff")) {
            e.cutoff = *number(doc, "evolve_cutoff");
            if (!(*e.cutoff > cfg.atoms.omega0)) {
                throw ConfigError("evolve_cutoff", "must exceed omega0");
            }
        }
        if (doc.contains("evolve_include_same_atom")) {
            if (!doc.at("evolve_include_same_atom").is_boolean()) {
                throw ConfigError("evolve_include_same_atom", "expected true or false");
            }
            e.include_same_atom = doc.at("evolve_include_same_atom").get<bool>();
        }
        if (e.include_same_atom && !e.cutoff) {
            throw ConfigError("evolve_cutoff", "required when evolve_include_same_atom is true");
        }
        cfg.evolve = e;
    }

    DiscriminateConfig& d = cfg.discriminate;
    if (doc.contains("window_L_min")) d.window_L_min = positive(doc, "window_L_min", 0.0);
    if (doc.contains("window_L_max")) d.window_L_max = positive(doc, "window_L_max", 0.0);
    if (d.window_L_min && d.window_L_max && !(*d.window_L_min < *d.window_L_max)) {
        throw ConfigError("window_L_max", "must exceed window_L_min");
    }
    auto& t = d.thresholds;
    t.far_lo = number(doc, "threshold_far_lo").value_or(t.far_lo);
    t.far_hi = number(doc, "threshold_far_hi").value_or(t.far_hi);
    t.flat_lo = number(doc, "threshold_flat_lo").value_or(t.flat_lo);
    t.flat_hi = number(doc, "threshold_flat_hi").value_or(t.flat_hi);
    if (!(t.far_lo < t.far_hi)) throw ConfigError("threshold_far_hi", "must exceed threshold_far_lo");
    if (!(t.flat_lo < t.flat_hi)) throw ConfigError("threshold_flat_hi", "must exceed threshold_flat_lo");

    cfg.tolerances.quad_abs = positive(doc, "quad_abs_tol", cfg.tolerances.quad_abs);
    cfg.tolerances.quad_rel = positive(doc, "quad_rel_tol", cfg.tolerances.quad_rel);
    cfg.tolerances.ode_abs = positive(doc, "ode_abs_tol", cfg.tolerances.ode_abs);
    cfg.tolerances.ode_rel = positive(doc, "ode_rel_tol", cfg.tolerances.ode_rel);

    cfg.output = text(doc, "output").value_or("-");
    if (cfg.output.empty()) {
        throw ConfigError("output", "must not be empty");
    }
    const std::string format = text(doc, "format").value_or("csv");
    if (format == "csv") {
        cfg.format = Format::Csv;
    } else if (format == "json") {
        cfg.format = Format::Json;
    } else {
        throw ConfigError("format", "expected \"csv\" or \"json\"");
    }
    return cfg;
}

RunConfig parse_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    return parse(doc);
}

RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open config file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

json to_json(const RunConfig& c) {
    json doc;
    if (const auto* patch = std::get_if<DeSitterPatch>(&c.spacetime)) {
        doc["spacetime"] = "de_sitter";
        doc["alpha"] = patch->alpha;
        doc["r"] = patch->r;
    } else {
        doc["spacetime"] = "thermal_minkowski";
        doc["temperature"] = std::get<ThermalBath>(c.spacetime).temperature;
    }
    doc["omega0"] = c.atoms.omega0;
    doc["mu"] = c.atoms.mu;
    if (c.delta_theta) {
        doc["delta_theta"] = *c.delta_theta;
    } else {
        doc["L"] = c.atoms.L;
    }
    if (c.sweep) {
        doc["sweep_L_min"] = c.sweep->L_min;
        doc["sweep_L_max"] = c.sweep->L_max;
        doc["sweep_n_points"] = c.sweep->n_points;
        doc["sweep_spacing"] = c.sweep->spacing == Spacing::Log ? "log" : "linear";
        doc["sweep_method"] = c.sweep->method == SweepMethod::ClosedForm ? "closed_form" : "quadrature";
    }
    if (c.evolve) {
        doc["evolve_initial"] = std::string(shifts::to_string(c.evolve->initial));
        doc["evolve_tau_max"] = c.evolve->tau_max;
        doc["evolve_tau_step"] = c.evolve->tau_step;
        if (c.evolve->cutoff) {
            doc["evolve_cutoff"] = *c.evolve->cutoff;
        }
        doc["evolve_include_same_atom"] = c.evolve->include_same_atom;
    }
    if (c.discriminate.window_L_min) doc["window_L_min"] = *c.discriminate.window_L_min;
    if (c.discriminate.window_L_max) doc["window_L_max"] = *c.discriminate.window_L_max;
    doc["threshold_far_lo"] = c.discriminate.thresholds.far_lo;
    doc["threshold_far_hi"] = c.discriminate.thresholds.far_hi;
    doc["threshold_flat_lo"] = c.discriminate.thresholds.flat_lo;
    doc["threshold_flat_hi"] = c.discriminate.thresholds.flat_hi;
    doc["quad_abs_tol"] = c.tolerances.quad_abs;
    doc["quad_rel_tol"] = c.tolerances.quad_rel;
    doc["ode_abs_tol"] = c.tolerances.ode_abs;
    doc["ode_rel_tol"] = c.tolerances.ode_rel;
    doc["output"] = c.output;
    doc["format"] = c.format == Format::Csv ? "csv" : "json";
    return doc;
}

std::vector<double> sweep_grid(const SweepConfig& s) {
    std::vector<double> out(s.n_points);
    const double last = static_cast<double>(s.n_points - 1);
    for (std::size_t i = 0; i < s.n_points; ++i) {
        const double t = static_cast<double>(i) / last;
        out[i] = s.spacing == Spacing::Log ? s.L_min * std::pow(s.L_max / s.L_min, t)
                                           : s.L_min + t * (s.L_max - s.L_min);
    }
    out.front() = s.L_min;
    out.back() = s.L_max;
    return out;
}

quadrature::HalfLineOptions quadrature_options(const Tolerances& tol) {
    quadrature::HalfLineOptions opts;
    opts.abs_tol = tol.quad_abs;
    opts.rel_tol = tol.quad_rel;
    return opts;
}

std::optional<discriminator::Window> fit_window(const DiscriminateConfig& d) {
    if (!d.window_L_min && !d.window_L_max) {
        return std::nullopt;
    }
    return discriminator::Window{d.window_L_min.value_or(0.0),
                                 d.window_L_max.value_or(std::numeric_limits<double>::infinity())};
}

} // namespace rcpi::config
