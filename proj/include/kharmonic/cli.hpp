#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "kharmonic/models.hpp"

namespace kharmonic {

enum class Command { Classify, Scan, VerifyClosedForms, Tension, HopfCheck };
enum class OutputFormat { Table, Json, Csv };

struct RunConfig {
    Command command = Command::Classify;
    OutputFormat format = OutputFormat::Table;
    std::string output_path;  // empty: standard output

    // classify (family required); scan (family empty: all four families)
    std::optional<Family> family;
    int d1 = 0, d2 = 0;
    int k = 2;
    double root_tol = 1e-12;
    double residual_tol = 1e-9;

    // scan grid bounds; the defaults keep runtime desk-scale and the caps
    // (dims, k <= 12) hold unless allow_large is set
    int k_min = 2, k_max = 10;
    int max_dim = 10;
    bool allow_large = false;

    // tension inputs
    int m_eff = 1;
    double beta = 0, tau2 = 0;

    // hopf-check inputs
    int points = 1000;
    int fiber_samples = 16;
    double step = 1e-5;
    unsigned int seed = 20260814;
};

// Parses argv into a RunConfig. Returns nullopt when parsing already
// finished the program's work (--help, parse error); exit_code then holds
// the status: 0 for help, 2 for invalid invocations.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code,
                                    std::ostream& out, std::ostream& err);

// Executes the configured command. The report goes to `out`, or to
// config.output_path when set; diagnostics go to `err`. Returns 0 when all
// requested checks pass, 1 on check failures, 2 on invalid configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Shortest decimal string that re-reads as exactly the same double.
std::string format_double(double v);

}  // namespace kharmonic
