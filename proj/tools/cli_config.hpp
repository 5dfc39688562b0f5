#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swg::cli {

/// Fully resolved invocation: one command plus every knob it needs.
/// parse_args applies defaults (mu = r-2, lambda = 1/20 when no time spec is
/// given) and validates, so a returned config is always runnable.
struct RunConfig {
    std::string command;  // solve | spatial-study | temporal-study | projection-study
    int r = 4;
    int mu = 0;  // 0 until resolved
    std::string mesh = "quasi-a";
    std::vector<int> n_list;
    std::optional<double> lambda;
    std::optional<double> k;
    std::optional<int> steps;  // --M for solve / spatial-study
    std::vector<int> m_list;   // --M for temporal-study
    int m_ref = 0;
    double T = 1.0;
    int mms = 1;  // 0: zero initial data, no forcing (solve only)
    std::string target = "nonsmooth";
    std::string output;
    int quad_points = 0;
    int linf_samples = 20;
    int jobs = 0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Invalid flags or flag combinations.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown after --help / --version output; carries the process exit code.
struct ExitRequest {
    int code = 0;
};

/// Parse command-line arguments (without argv[0]).
RunConfig parse_args(const std::vector<std::string>& args);

/// Canonical serialization; parse_args(to_args(c)) == c for any valid c.
std::vector<std::string> to_args(const RunConfig& config);

/// Execute the configured command, writing CSV (and plot data) and printing
/// the table. Exit codes: 0 success, 1 error, 3 divergence.
int run(const RunConfig& config);

}  // namespace swg::cli
