// cli.hpp: the rcpi subcommands as library functions writing to caller-supplied streams

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcpi/config.hpp"
#include "rcpi/discriminator.hpp"
#include "rcpi/liouvillian.hpp"

namespace rcpi::cli {

enum ExitCode : int { Ok = 0, Usage = 1, ValidationFailure = 2, NumericalFailure = 3 };

// Shortest form carrying 17 significant digits; identical input gives identical text.
std::string format_double(double v);

class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t row, const std::string& message)
        : std::runtime_error("row " + std::to_string(row) + ": " + message), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

// Single-L report: closed form and quadrature for S and A, error estimate, regime hint.
nlohmann::json shift_report(const config::RunConfig& cfg);
void cmd_shift(const config::RunConfig& cfg, std::ostream& out);

// Rows in L order; points are computed on up to `threads` workers.
std::vector<discriminator::SweepRecord> compute_sweep(const config::RunConfig& cfg, unsigned threads = 1);
// Columns L,dE_S,dE_A,envelope; envelope is 1 on local maxima of |dE_S|.
void write_sweep_csv(std::ostream& out, std::span<const discriminator::SweepRecord> rows);
void cmd_sweep(const config::RunConfig& cfg, std::ostream& out, unsigned threads = 1);

// Header must start L,dE_S,dE_A; an optional fourth column is ignored.
std::vector<discriminator::SweepRecord> read_sweep_csv(std::istream& in);

liouvillian::Trajectory run_evolve(const config::RunConfig& cfg);
// Columns tau,pG,pE,pS,pA,trace,min_eig. Positivity violations are reported on `diag`.
void cmd_evolve(const config::RunConfig& cfg, std::ostream& out, std::ostream& diag);

struct DiscriminationResult {
    discriminator::PowerLawFit fit;
    discriminator::Classification classification;
    std::size_t envelope_points{0};
};

DiscriminationResult discriminate(std::span<const discriminator::SweepRecord> rows,
                                  const config::DiscriminateConfig& settings);
nlohmann::json to_json(const DiscriminationResult& result);
// Returns ValidationFailure for an Indeterminate verdict when strict is set, Ok otherwise.
int cmd_discriminate(std::istream& in, const config::DiscriminateConfig& settings, bool strict, std::ostream& out);

enum class Level { Quick, Full };

// Deterministic report {"level", "passed", "checks": [...]}; each failing check lists
// its worst parameter points with the value and the reference.
nlohmann::json run_validation(Level level);
int cmd_validate(Level level, std::ostream& out);

// Entry point of the rcpi executable.
int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace rcpi::cli
