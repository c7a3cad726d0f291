#pragma once

// Run configuration for the command-line front end.
//
// Sources, lowest precedence first: built-in defaults, the environment
// variable QHAHN_PRECISION_DIGITS, a flat key=value config file (--config),
// command-line flags.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhahn/polyfam.hpp"
#include "qhahn/quadrature.hpp"
#include "qhahn/verify.hpp"

namespace qhahn {

enum class Command { eval, verify, classify, table };
enum class OutputFormat { json, csv };
enum class TableKind { weight, moments, gram, nevanlinna };
enum class WeightChoice { full, hermite, n_factor, asc };

struct RunConfig {
    Command command = Command::eval;
    double q = 0.5;
    double a = 2.0;
    double b = 3.0;
    double c = 5.0;
    std::optional<int> n;
    int N = 8;
    int K = 16;
    int n_max = 200;
    std::vector<double> u;  // eval points; empty means `points` seeded samples
    int points = 20;
    std::uint64_t seed = 20240607;
    std::optional<double> tol;
    int precision_digits = 15;
    OutputFormat output = OutputFormat::json;
    std::string output_path;  // empty writes to stdout
    std::string suite = "all";
    TableKind table = TableKind::weight;
    WeightChoice weight = WeightChoice::full;
    double ar = 0.5;
    double br = 1.0 / 3.0;
    double grid_lo = -6.0;
    double grid_hi = 6.0;
    int grid_points = 241;
    int panels = 256;
    double u_max = 0.0;
    bool adaptive = false;
    bool serial = false;

    QParams params() const { return {q, a, b, c}; }
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr const char* kPrecisionEnv = "QHAHN_PRECISION_DIGITS";

std::string to_string(Command c);
std::string to_string(OutputFormat f);
std::string to_string(TableKind k);
std::string to_string(WeightChoice w);

/// Thrown for malformed flags or config files; the CLI maps it to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown for --help; carries the help text (exit code 0).
struct HelpRequested {
    std::string text;
};

/// Parses `command --flag value ...` (argv without the program name).
/// Throws UsageError, or qhahn::Error from validation.
RunConfig parse_run_config(const std::vector<std::string>& args);

/// The configuration as a command line that parses back to an equal RunConfig.
std::string canonical_args(const RunConfig& cfg);

/// The flag values as key=value lines accepted by --config.
std::string config_file_text(const RunConfig& cfg);

/// Rejects invalid combinations before any computation: throws
/// Error(InadmissibleParams) for bad parameters and UsageError otherwise.
void validate(const RunConfig& cfg);

QuadConfig quad_config(const RunConfig& cfg);
VerifyOptions verify_options(const RunConfig& cfg);

}  // namespace qhahn
