// cli.cpp: rcpi subcommands, CSV and JSON output, exit-code mapping

#include "rcpi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rcpi/quadrature.hpp"
#include "rcpi/shifts.hpp"

namespace rcpi::cli {

namespace {

using nlohmann::json;
using discriminator::SweepRecord;

json spacetime_json(const SpacetimeConfig& s) {
    if (const auto* patch = std::get_if<DeSitterPatch>(&s)) {
        return {{"type", "de_sitter"}, {"alpha", patch->alpha}, {"r", patch->r}, {"kappa", geometry::kappa(*patch)}};
    }
    return {{"type", "thermal_minkowski"}, {"temperature", std::get<ThermalBath>(s).temperature}};
}

std::string regime_hint(const SpacetimeConfig& s, double L) {
    const auto* patch = std::get_if<DeSitterPatch>(&s);
    if (!patch) {
        return "flat: 1/L envelope at every separation";
    }
    const double ratio = L / geometry::kappa(*patch);
    if (ratio < 0.1) {
        return "near (L << kappa): flat-space 1/L law";
    }
    if (ratio >= 30.0) {
        return "far (L >> kappa): 1/L^2 envelope";
    }
    return "crossover (L ~ kappa)";
}

double envelope(const SpacetimeConfig& s, const AtomPair& atoms) {
    if (const auto* patch = std::get_if<DeSitterPatch>(&s)) {
        return shifts::envelope_desitter(atoms.L, geometry::kappa(*patch), atoms.mu);
    }
    return shifts::envelope_minkowski(atoms.L, atoms.mu);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, const char* column) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (*first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc() || ptr != last) {
        throw CsvError(row, std::string("column ") + column + ": cannot parse '" + cell + "' as a number");
    }
    return v;
}

// Runs body(i) for i in [0, n) on up to `threads` workers, strided so the result order is fixed.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path == "-") {
            stream_ = &fallback;
            return;
        }
        file_.open(path);
        if (!file_) {
            throw std::runtime_error("cannot open output file " + path);
        }
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) {
            throw std::runtime_error("writing output failed");
        }
    }

private:
    std::ofstream file_;
    std::ostream* stream_{nullptr};
};

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

json shift_report(const config::RunConfig& cfg) {
    const auto& st = cfg.spacetime;
    const auto& atoms = cfg.atoms;
    const auto closed_s = shifts::rcpi_closed(st, atoms, shifts::DickeState::S);
    const auto closed_a = shifts::rcpi_closed(st, atoms, shifts::DickeState::A);
    const auto opts = config::quadrature_options(cfg.tolerances);
    const auto quad_s = shifts::rcpi_quadrature(st, atoms, shifts::DickeState::S, opts);
    const auto quad_a = shifts::rcpi_quadrature(st, atoms, shifts::DickeState::A, opts);
    const double env = envelope(st, atoms);

    json report;
    report["spacetime"] = spacetime_json(st);
    report["omega0"] = atoms.omega0;
    report["mu"] = atoms.mu;
    report["L"] = atoms.L;
    if (const auto* patch = std::get_if<DeSitterPatch>(&st)) {
        report["L_over_kappa"] = atoms.L / geometry::kappa(*patch);
        report["omega0_kappa"] = atoms.omega0 * geometry::kappa(*patch);
    }
    report["regime"] = regime_hint(st, atoms.L);
    report["envelope"] = env;
    report["closed_form"] = {{"dE_S", closed_s.delta_E}, {"dE_A", closed_a.delta_E}};
    report["quadrature"] = {{"dE_S", quad_s.delta_E}, {"dE_A", quad_a.delta_E}, {"error_estimate", quad_s.error}};
    // Relative to the envelope so a zero crossing does not blow the comparison up
    report["difference_over_envelope"] = std::abs(quad_s.delta_E - closed_s.delta_E) / env;
    report["zero_crossing"] = std::abs(closed_s.delta_E) < 1e-6 * env;
    return report;
}

void cmd_shift(const config::RunConfig& cfg, std::ostream& out) {
    const json report = shift_report(cfg);
    if (cfg.format == config::Format::Json) {
        out << report.dump(2) << '\n';
        return;
    }
    out << "method,state,dE,error\n";
    out << "closed_form,S," << format_double(report["closed_form"]["dE_S"].get<double>()) << ",0\n";
    out << "closed_form,A," << format_double(report["closed_form"]["dE_A"].get<double>()) << ",0\n";
    const std::string err = format_double(report["quadrature"]["error_estimate"].get<double>());
    out << "quadrature,S," << format_double(report["quadrature"]["dE_S"].get<double>()) << ',' << err << '\n';
    out << "quadrature,A," << format_double(report["quadrature"]["dE_A"].get<double>()) << ',' << err << '\n';
}

std::vector<SweepRecord> compute_sweep(const config::RunConfig& cfg, unsigned threads) {
    if (!cfg.sweep) {
        throw config::ConfigError("sweep_L_min", "the sweep command needs sweep_L_min and sweep_L_max");
    }
    const std::vector<double> grid = config::sweep_grid(*cfg.sweep);
    std::vector<SweepRecord> rows(grid.size());
    const auto opts = config::quadrature_options(cfg.tolerances);
    const bool quad = cfg.sweep->method == config::SweepMethod::Quadrature;
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        AtomPair atoms = cfg.atoms;
        atoms.L = grid[i];
        const auto s = quad ? shifts::rcpi_quadrature(cfg.spacetime, atoms, shifts::DickeState::S, opts)
                            : shifts::rcpi_closed(cfg.spacetime, atoms, shifts::DickeState::S);
        rows[i] = {grid[i], s.delta_E, -s.delta_E};
    });
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> rows) {
    out << "L,dE_S,dE_A,envelope\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool peak = false;
        if (i > 0 && i + 1 < rows.size()) {
            const double y = std::abs(rows[i].delta_E_S);
            peak = y > std::abs(rows[i - 1].delta_E_S) && y >= std::abs(rows[i + 1].delta_E_S);
        }
        out << format_double(rows[i].L) << ',' << format_double(rows[i].delta_E_S) << ','
            << format_double(rows[i].delta_E_A) << ',' << (peak ? 1 : 0) << '\n';
    }
}

void cmd_sweep(const config::RunConfig& cfg, std::ostream& out, unsigned threads) {
    const auto rows = compute_sweep(cfg, threads);
    if (cfg.format == config::Format::Json) {
        json doc = json::array();
        for (const auto& r : rows) {
            doc.push_back({{"L", r.L}, {"dE_S", r.delta_E_S}, {"dE_A", r.delta_E_A}});
        }
        out << doc.dump(2) << '\n';
        return;
    }
    write_sweep_csv(out, rows);
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
    std::string line;
    std::size_t row = 1;
    if (!std::getline(in, line)) {
        throw CsvError(row, "empty input; expected header L,dE_S,dE_A");
    }
    const auto header = split_csv(line);
    if (header.size() < 3 || header[0] != "L" || header[1] != "dE_S" || header[2] != "dE_A") {
        throw CsvError(row, "header must start with L,dE_S,dE_A");
    }
    std::vector<SweepRecord> rows;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw CsvError(row, "expected " + std::to_string(header.size()) + " columns, got " +
                                    std::to_string(cells.size()));
        }
        const SweepRecord r{parse_cell(cells[0], row, "L"), parse_cell(cells[1], row, "dE_S"),
                            parse_cell(cells[2], row, "dE_A")};
        if (!(r.L > 0.0) || !std::isfinite(r.L)) {
            throw CsvError(row, "L must be positive");
        }
        if (!rows.empty() && !(r.L > rows.back().L)) {
            throw CsvError(row, "L must be strictly increasing");
        }
        if (std::abs(r.delta_E_S + r.delta_E_A) > 1e-10 * std::max(std::abs(r.delta_E_S), std::abs(r.delta_E_A))) {
            throw CsvError(row, "dE_A is not -dE_S");
        }
        rows.push_back(r);
    }
    return rows;
}

liouvillian::Trajectory run_evolve(const config::RunConfig& cfg) {
    if (!cfg.evolve) {
        throw config::ConfigError("evolve_tau_max", "the evolve command needs evolve_tau_max");
    }
    const config::EvolveConfig& e = *cfg.evolve;
    const auto cutoff = e.include_same_atom ? e.cutoff : std::nullopt;
    const auto coeffs = liouvillian::compute_coefficients(cfg.spacetime, cfg.atoms, cutoff);
    liouvillian::GeneratorOptions gopts;
    gopts.include_same_atom_shift = e.include_same_atom;
    const auto gen = liouvillian::assemble_generator(coeffs, cfg.atoms.omega0, gopts);

    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(std::floor(e.tau_max / e.tau_step + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) {
        grid.push_back(static_cast<double>(i) * e.tau_step);
    }
    if (e.tau_max - grid.back() > 1e-9 * e.tau_max) {
        grid.push_back(e.tau_max);
    }

    liouvillian::EvolveOptions eopts;
    eopts.abs_tol = cfg.tolerances.ode_abs;
    eopts.rel_tol = cfg.tolerances.ode_rel;
    const auto rho0 = liouvillian::TwoQubitState::pure(shifts::dicke_vector(e.initial));
    return liouvillian::evolve(rho0, gen, grid, eopts);
}

void cmd_evolve(const config::RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    const auto traj = run_evolve(cfg);
    if (traj.positivity_flagged) {
        diag << "warning: a state along the trajectory has an eigenvalue below -"
             << format_double(liouvillian::positivity_tolerance) << '\n';
    }
    if (cfg.format == config::Format::Json) {
        json doc = json::array();
        for (const auto& p : traj.points) {
            const auto pops = shifts::dicke_populations(p.rho);
            doc.push_back({{"tau", p.tau}, {"pG", pops(0)}, {"pE", pops(1)}, {"pS", pops(2)}, {"pA", pops(3)},
                           {"trace", p.trace}, {"min_eig", p.min_eigenvalue}});
        }
        out << doc.dump(2) << '\n';
        return;
    }
    out << "tau,pG,pE,pS,pA,trace,min_eig\n";
    for (const auto& p : traj.points) {
        const auto pops = shifts::dicke_populations(p.rho);
        out << format_double(p.tau);
        for (int i = 0; i < 4; ++i) {
            out << ',' << format_double(pops(i));
        }
        out << ',' << format_double(p.trace) << ',' << format_double(p.min_eigenvalue) << '\n';
    }
}

DiscriminationResult discriminate(std::span<const SweepRecord> rows, const config::DiscriminateConfig& settings) {
    const auto env = discriminator::extract_envelope(rows);
    DiscriminationResult out;
    out.envelope_points = env.size();
    out.fit = discriminator::fit_power_law(env, config::fit_window(settings));
    out.classification = discriminator::classify(out.fit, settings.thresholds);
    return out;
}

json to_json(const DiscriminationResult& r) {
    return {{"exponent", r.fit.exponent},
            {"amplitude", r.fit.amplitude},
            {"residual_rms", r.fit.residual_rms},
            {"window", {r.fit.window.L_min, r.fit.window.L_max}},
            {"n_points", r.fit.n_points},
            {"envelope_points", r.envelope_points},
            {"verdict", std::string(discriminator::to_string(r.classification.verdict))},
            {"notes", r.classification.notes}};
}

int cmd_discriminate(std::istream& in, const config::DiscriminateConfig& settings, bool strict, std::ostream& out) {
    const auto rows = read_sweep_csv(in);
    const auto result = discriminate(rows, settings);
    out << to_json(result).dump(2) << '\n';
    if (strict && result.classification.verdict == discriminator::Verdict::Indeterminate) {
        return ValidationFailure;
    }
    return Ok;
}

int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"rcpi: resonance interaction between two entangled atoms in de Sitter and thermal flat space"};
    app.require_subcommand(1);

    std::string config_path, out_path, in_path = "-", format, level = "quick";
    unsigned threads = 1;
    bool strict = false;
    std::optional<double> window_min, window_max;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output path, - for stdout");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };
    auto* shift = app.add_subcommand("shift", "interaction energy at one separation, closed form and quadrature");
    auto* sweep = app.add_subcommand("sweep", "dE_S and dE_A over a range of separations");
    auto* evolve = app.add_subcommand("evolve", "master-equation trajectory from a Dicke state");
    auto* disc = app.add_subcommand("discriminate", "fit the envelope of a sweep and name the spacetime");
    auto* valid = app.add_subcommand("validate", "run the built-in consistency checks");
    for (auto* sub : {shift, sweep, evolve}) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        add_common(sub);
    }
    disc->add_option("--config", config_path, "JSON run configuration (window and thresholds)");
    disc->add_option("--in", in_path, "sweep CSV, - for stdin");
    disc->add_option("--window-min", window_min, "smallest L used in the fit");
    disc->add_option("--window-max", window_max, "largest L used in the fit");
    disc->add_flag("--strict", strict, "exit with status 2 on an Indeterminate verdict");
    add_common(disc);
    valid->add_option("level,--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    add_common(valid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        config::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = config::load(config_path);
        }
        if (!out_path.empty()) cfg.output = out_path;
        if (!format.empty()) cfg.format = format == "json" ? config::Format::Json : config::Format::Csv;

        OutputTarget target(cfg.output, out);
        int code = Ok;
        if (shift->parsed()) {
            cmd_shift(cfg, target.get());
        } else if (sweep->parsed()) {
            cmd_sweep(cfg, target.get(), threads);
        } else if (evolve->parsed()) {
            cmd_evolve(cfg, target.get(), err);
        } else if (disc->parsed()) {
            if (window_min) cfg.discriminate.window_L_min = *window_min;
            if (window_max) cfg.discriminate.window_L_max = *window_max;
            if (in_path == "-") {
                code = cmd_discriminate(in, cfg.discriminate, strict, target.get());
            } else {
                std::ifstream file(in_path);
                if (!file) {
                    throw std::runtime_error("cannot open input file " + in_path);
                }
                code = cmd_discriminate(file, cfg.discriminate, strict, target.get());
            }
        } else if (valid->parsed()) {
            code = cmd_validate(level == "full" ? Level::Full : Level::Quick, target.get());
        }
        target.finish();
        return code;
    } catch (const config::ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return ValidationFailure;
    } catch (const CsvError& e) {
        err << "input error: " << e.what() << '\n';
        return ValidationFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return ValidationFailure;
    } catch (const quadrature::QuadratureError& e) {
        err << "quadrature failure: " << e.what() << '\n';
        return NumericalFailure;
    } catch (const liouvillian::IntegrationError& e) {
        err << "integration failure: " << e.what() << '\n';
        return NumericalFailure;
    } catch (const discriminator::InsufficientOscillations& e) {
        err << "discrimination failure: " << e.what() << '\n';
        return NumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return NumericalFailure;
    }
}

} // namespace rcpi::cli
