// test_cli.cpp: configuration, CSV and subcommand tests

#include <doctest.h>

#include <stdexcept>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rcpi/cli.hpp"
#include "rcpi/config.hpp"

using namespace rcpi;
using namespace rcpi::cli;
using doctest::Approx;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

config::RunConfig de_sitter_config(double L = 2.0) {
    return config::parse(json{{"spacetime", "de_sitter"}, {"alpha", 1.0}, {"r", 0.0}, {"omega0", 1.0}, {"mu", 0.1}, {"L", L}});
}

int invoke(std::vector<std::string> args, const std::string& input, std::string& out, std::string& err) {
    args.insert(args.begin(), "rcpi");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::istringstream in(input);
    std::ostringstream o, e;
    const int code = run(static_cast<int>(argv.size()), argv.data(), in, o, e);
    out = o.str();
    err = e.str();
    return code;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream s(text);
    for (std::string line; std::getline(s, line);) out.push_back(line);
    return out;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> out;
    std::istringstream s(line);
    for (std::string f; std::getline(s, f, ',');) out.push_back(std::stod(f));
    return out;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("rcpi_test_" + name)).string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config round trip") {
    json doc{{"spacetime", "thermal_minkowski"}, {"temperature", 0.4}, {"omega0", 2.0}, {"mu", 0.05}, {"L", 1.5},
             {"sweep_L_min", 0.1}, {"sweep_L_max", 50.0}, {"sweep_n_points", 77}, {"sweep_spacing", "linear"},
             {"evolve_initial", "A"}, {"evolve_tau_max", 10.0}, {"evolve_tau_step", 0.5},
             {"window_L_min", 1.0}, {"threshold_far_lo", 1.7}, {"format", "json"}};
    const auto cfg = config::parse(doc);
    CHECK(std::get<ThermalBath>(cfg.spacetime).temperature == 0.4);
    REQUIRE(cfg.sweep);
    CHECK(cfg.sweep->n_points == 77);
    CHECK(cfg.sweep->spacing == config::Spacing::Linear);
    REQUIRE(cfg.evolve);
    CHECK(cfg.evolve->initial == shifts::DickeState::A);
    CHECK(config::parse(config::to_json(cfg)) == cfg);
    CHECK(config::parse(config::to_json(de_sitter_config())) == de_sitter_config());
}

TEST_CASE("separation from the opening angle") {
    const auto cfg = config::parse(
        json{{"spacetime", "de_sitter"}, {"alpha", 2.0}, {"r", 0.5}, {"delta_theta", pi / 3.0}, {"omega0", 1.0}});
    CHECK(cfg.atoms.L == Approx(2.0 * 0.5 * std::sin(pi / 6.0)).epsilon(1e-15));
    CHECK(config::parse(config::to_json(cfg)) == cfg);
}

TEST_CASE("config errors name the field") {
    auto field_of = [](const json& doc) {
        try {
            config::parse(doc);
        } catch (const config::ConfigError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of(json{{"alpha", 1.0}}) == "spacetime");
    CHECK(field_of(json{{"spacetime", "anti_de_sitter"}}) == "spacetime");
    CHECK(field_of(json{{"spacetime", "de_sitter"}, {"alpha", 1.0}, {"r", 1.5}, {"L", 1.0}}) == "r");
    CHECK(field_of(json{{"spacetime", "de_sitter"}, {"L", -1.0}}) == "L");
    CHECK(field_of(json{{"spacetime", "de_sitter"}, {"L", 1.0}, {"omega0", "fast"}}) == "omega0");
    CHECK(field_of(json{{"spacetime", "de_sitter"}, {"L", 1.0}, {"colour", 1}}) == "colour");
    CHECK(field_of(json{{"spacetime", "thermal_minkowski"}, {"temperature", -0.1}, {"L", 1.0}}) == "temperature");
    CHECK(field_of(json{{"spacetime", "de_sitter"}, {"L", 1.0}, {"sweep_L_min", 5.0}, {"sweep_L_max", 1.0}}) != "<none>");
    CHECK_THROWS_AS(config::parse_text("{\"spacetime\": "), config::ConfigError);
}

TEST_CASE("sweep grid endpoints are exact") {
    config::SweepConfig s{0.01, 1000.0, 200, config::Spacing::Log, config::SweepMethod::ClosedForm};
    const auto g = config::sweep_grid(s);
    REQUIRE(g.size() == 200);
    CHECK(g.front() == 0.01);
    CHECK(g.back() == 1000.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("format_double keeps 17 significant digits") {
    for (double v : {pi, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.1}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("shift report") {
    const auto report = shift_report(de_sitter_config(2.0));
    const double cs = report["closed_form"]["dE_S"].get<double>();
    CHECK(report["closed_form"]["dE_A"].get<double>() == -cs);
    CHECK(report["quadrature"]["dE_S"].get<double>() == Approx(cs).epsilon(1e-6));
    CHECK(report["regime"].is_string());

    // thermal shifts do not depend on temperature
    auto thermal = [](double T) {
        return shift_report(config::parse(json{{"spacetime", "thermal_minkowski"}, {"temperature", T}, {"omega0", 1.0}, {"mu", 0.1}, {"L", 2.5}}));
    };
    const auto a = thermal(0.3), b = thermal(3.0);
    CHECK(a["closed_form"]["dE_S"].get<double>() == b["closed_form"]["dE_S"].get<double>());
    const double qa = a["quadrature"]["dE_S"].get<double>(), qb = b["quadrature"]["dE_S"].get<double>();
    CHECK(std::abs(qa - qb) <= 1e-12 * std::abs(qa));

    // first zero crossing
    const double Lstar = 2.0 * std::sinh(pi / 4.0);
    CHECK(shift_report(de_sitter_config(Lstar))["zero_crossing"].get<bool>());
    CHECK_FALSE(report["zero_crossing"].get<bool>());
}

TEST_CASE("shift CSV") {
    std::ostringstream out;
    cmd_shift(de_sitter_config(), out);
    const auto ls = lines(out.str());
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "method,state,dE,error");
    CHECK(ls[1].rfind("closed_form,S,", 0) == 0);
    CHECK(ls[4].rfind("quadrature,A,", 0) == 0);
}

TEST_CASE("sweep contract") {
    auto cfg = de_sitter_config();
    cfg.sweep = config::SweepConfig{0.01, 1000.0, 200, config::Spacing::Log, config::SweepMethod::ClosedForm};
    std::ostringstream a, b;
    cmd_sweep(cfg, a, 1);
    cmd_sweep(cfg, b, 3);
    CHECK(a.str() == b.str());
    const auto ls = lines(a.str());
    REQUIRE(ls.size() == 201);
    CHECK(ls[0] == "L,dE_S,dE_A,envelope");
    double prev = 0.0;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        REQUIRE(f.size() == 4);
        CHECK(f[0] > prev);
        CHECK(f[2] == -f[1]);
        prev = f[0];
    }
    std::istringstream in(a.str());
    const auto rows = read_sweep_csv(in);
    CHECK(rows.size() == 200);
    CHECK(rows.front().L == 0.01);
    CHECK(rows.back().L == 1000.0);
}

TEST_CASE("quadrature sweep matches the closed-form sweep") {
    auto cfg = de_sitter_config();
    cfg.sweep = config::SweepConfig{0.1, 20.0, 12, config::Spacing::Log, config::SweepMethod::ClosedForm};
    const auto closed = compute_sweep(cfg);
    cfg.sweep->method = config::SweepMethod::Quadrature;
    const auto quad = compute_sweep(cfg, 2);
    for (std::size_t i = 0; i < closed.size(); ++i) {
        CHECK(quad[i].delta_E_S == Approx(closed[i].delta_E_S).epsilon(1e-6));
        CHECK(quad[i].delta_E_A == -quad[i].delta_E_S);
    }
}

TEST_CASE("sweep CSV reader reports rows") {
    auto row_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_sweep_csv(in);
        } catch (const CsvError& e) {
            return e.row();
        }
        return 0;
    };
    CHECK(row_of("L,dE_S,dE_A\n1,0.5,-0.5\n2,0.1,-0.1\n") == 0);
    CHECK(row_of("L,dE_S,dE_A\n1,0.5,-0.5\nfoo,0.1,-0.1\n") == 3);
    CHECK(row_of("L,dE_S,dE_A\n1,0.5,-0.5\n0.5,0.1,-0.1\n") == 3);
    CHECK(row_of("L,dE_S,dE_A\n1,0.5,-0.4\n") == 2);
    CHECK(row_of("L,dE_S,dE_A\n-1,0.5,-0.5\n") == 2);
    CHECK(row_of("x,y,z\n1,0.5,-0.5\n") == 1);
}

TEST_CASE("evolve from the antisymmetric state at small separation") {
    auto cfg = config::parse(json{{"spacetime", "de_sitter"}, {"alpha", 1.0}, {"omega0", 1.0}, {"mu", 0.1}, {"L", 1e-3},
                                  {"evolve_initial", "A"}, {"evolve_tau_max", 2000.0}, {"evolve_tau_step", 100.0}});
    const auto traj = run_evolve(cfg);
    REQUIRE(traj.points.size() == 21);
    const auto pops = shifts::dicke_populations(traj.points.back().rho);
    CHECK(pops(3) >= 0.999);
    for (const auto& p : traj.points) CHECK(std::abs(p.trace - 1.0) <= 1e-9);
}

TEST_CASE("evolve from the doubly excited state") {
    auto cfg = config::parse(json{{"spacetime", "de_sitter"}, {"alpha", 1.0}, {"omega0", 1.0}, {"mu", 0.3}, {"L", 1.0},
                                  {"evolve_initial", "E"}, {"evolve_tau_max", 20.0}, {"evolve_tau_step", 1.0}});
    std::ostringstream out, diag;
    cmd_evolve(cfg, out, diag);
    const auto ls = lines(out.str());
    REQUIRE(ls.size() == 22);
    CHECK(ls[0] == "tau,pG,pE,pS,pA,trace,min_eig");
    double prev = 2.0;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        CHECK(f[2] < prev);
        CHECK(std::abs(f[5] - 1.0) <= 1e-9);
        prev = f[2];
    }
    CHECK(diag.str().empty());
}

TEST_CASE("discriminate verdicts") {
    auto far = config::parse(json{{"spacetime", "de_sitter"}, {"alpha", 1.0}, {"omega0", 5.0}, {"mu", 0.1},
                                  {"sweep_L_min", 30.0}, {"sweep_L_max", 1000.0}, {"sweep_n_points", 4000}});
    std::stringstream csv;
    cmd_sweep(far, csv);
    std::ostringstream out;
    CHECK(cmd_discriminate(csv, {}, true, out) == Ok);
    const auto verdict = json::parse(out.str());
    CHECK(verdict["verdict"] == "DeSitterFar");

    auto thermal = config::parse(json{{"spacetime", "thermal_minkowski"}, {"temperature", 0.3}, {"omega0", 5.0}, {"mu", 0.1},
                                      {"sweep_L_min", 10.0}, {"sweep_L_max", 100.0}, {"sweep_n_points", 2000}});
    std::stringstream csv2;
    cmd_sweep(thermal, csv2);
    std::ostringstream out2;
    CHECK(cmd_discriminate(csv2, {}, true, out2) == Ok);
    CHECK(json::parse(out2.str())["verdict"] == "FlatOrThermal");

    auto cross = config::parse(json{{"spacetime", "de_sitter"}, {"alpha", 1.0}, {"omega0", 40.0}, {"mu", 0.1},
                                    {"sweep_L_min", 0.5}, {"sweep_L_max", 10.0}, {"sweep_n_points", 8000}});
    std::stringstream csv3, csv4;
    cmd_sweep(cross, csv3);
    cmd_sweep(cross, csv4);
    std::ostringstream out3, out4;
    CHECK(cmd_discriminate(csv3, {}, true, out3) == ValidationFailure);
    CHECK(cmd_discriminate(csv4, {}, false, out4) == Ok);
    CHECK(json::parse(out4.str())["verdict"] == "Indeterminate");
}

TEST_CASE("validate quick") {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream a, b;
    CHECK(cmd_validate(Level::Quick, a) == Ok);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 60.0);
    cmd_validate(Level::Quick, b);
    CHECK(a.str() == b.str());
    const auto report = json::parse(a.str());
    CHECK(report["passed"].get<bool>());
    CHECK(report["checks"].size() >= 5);
}

TEST_CASE("exit codes") {
    std::string out, err;
    CHECK(invoke({}, "", out, err) == Usage);
    CHECK(invoke({"nonsense"}, "", out, err) == Usage);
    CHECK(invoke({"--help"}, "", out, err) == Ok);
    CHECK(invoke({"validate", "quick"}, "", out, err) == Ok);

    const std::string bad = temp_path("bad.json");
    std::ofstream(bad) << R"({"spacetime": "de_sitter", "alpha": 1.0, "r": 2.0, "L": 1.0})";
    CHECK(invoke({"shift", "--config", bad}, "", out, err) == ValidationFailure);
    CHECK(err.find("'r'") != std::string::npos);

    const std::string good = temp_path("good.json");
    std::ofstream(good) << R"({"spacetime": "de_sitter", "alpha": 1.0, "omega0": 1.0, "mu": 0.1, "L": 2.0})";
    CHECK(invoke({"shift", "--config", good}, "", out, err) == Ok);
    CHECK(out.rfind("method,state,dE,error", 0) == 0);
    CHECK(invoke({"shift", "--config", good, "--format", "json"}, "", out, err) == Ok);
    CHECK(json::parse(out)["closed_form"].is_object());

    CHECK(invoke({"discriminate"}, "L,dE_S,dE_A\n1,1,-1\n2,0.5,-0.5\n", out, err) == NumericalFailure);
    CHECK(invoke({"discriminate"}, "L,dE_S,dE_A\n1,1,-1\n0.5,0.5,-0.5\n", out, err) == ValidationFailure);
    CHECK(invoke({"shift", "--config", temp_path("missing.json")}, "", out, err) == ValidationFailure);
    std::filesystem::remove(bad);
    std::filesystem::remove(good);
}

} // TEST_SUITE
