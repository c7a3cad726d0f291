#pragma once

// Verification suites: each check reports a measured residual against a
// tolerance. Sample points come from a seeded generator so a report is
// reproducible from its options.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhahn/polyfam.hpp"
#include "qhahn/quadrature.hpp"

namespace qhahn {

struct Check {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct VerifyOptions {
    QParams params;
    std::optional<int> n;  // restrict degree-indexed suites to one degree
    int N = 8;             // Gram size
    int K = 16;            // moment order
    int points = 20;
    std::uint64_t seed = 20240607;
    std::optional<double> tol;  // replaces every default tolerance
    int precision_digits = 15;
    QuadConfig quad;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite name, and library errors for
/// parameters a suite cannot use.
std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& opt);

/// Seeded u values in [lo, hi].
std::vector<double> sample_points(std::uint64_t seed, int count, double lo, double hi);

}  // namespace qhahn
