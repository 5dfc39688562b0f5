#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swg/mesh.hpp"
#include "swg/solver.hpp"

namespace swg {

enum class MeshFamily { uniform, quasi_a, quasi_b };

const char* family_name(MeshFamily family);
MeshFamily parse_family(std::string_view name);  // "uniform" | "quasi-a" | "quasi-b"

/// Build a mesh of the family; rejects N of the wrong parity.
Mesh make_mesh(MeshFamily family, int num_elements);

struct SpaceParams {
    int r = 4;   // order (degree r-1)
    int mu = 2;  // smoothness
};

/// Time-step selection for a run: exactly one of the three must be set.
/// lambda fixes k = lambda * h_max; a target k or a step count M may be
/// given instead. The step count is always rounded so that M k = T exactly.
struct TimeSpec {
    std::optional<double> lambda;
    std::optional<double> k;
    std::optional<int> steps;

    std::pair<double, int> resolve(double h_max, double T) const;
};

struct StudyOptions {
    int quad_points = 0;    // 0: default r+2 per (sub-)element
    int linf_samples = 20;  // Linf sampling points per element
    int threads = 0;        // 0: one thread per row up to hardware concurrency
};

/// Observed convergence order log(e1/e2)/log(m1/m2) between two rows with
/// resolution measures m1, m2 (h_max for spatial studies, k for temporal).
/// Returns NaN when either error is not positive.
double order(double e1, double e2, double m1, double m2);

/// Table of errors and observed orders over a resolution sequence.
/// Orders are computed only between consecutive rows. Diverged rows are kept
/// with an `diverged` sentinel in the error cells rather than dropped.
struct RateTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;          // error column names
    std::vector<int> resolutions;              // N or M per row
    std::vector<double> measures;              // h_max or k per row
    std::vector<std::vector<double>> errors;   // [row][column]
    std::vector<char> diverged;                // per-row flag

    int rows() const { return static_cast<int>(resolutions.size()); }
    bool any_diverged() const;

    /// Orders between consecutive rows; NaN on the first row and wherever
    /// undefined.
    std::vector<std::vector<double>> compute_orders() const;

    /// CSV with a '#' metadata preamble and header
    /// resolution,<col>,rate_<col>,... Errors print as %.10e, rates as %.3f;
    /// undefined rates print empty, diverged error cells print `diverged`.
    void write_csv(std::ostream& out) const;

    /// Log-log pairs (log10 measure, log10 error per column) for external
    /// plotting; diverged rows are skipped.
    void write_plot(std::ostream& out) const;

    /// Fixed-width human-readable table.
    void print(std::ostream& out) const;
};

/// Evolve the manufactured solution on each mesh in the list and tabulate
/// L^2 / Linf / H^1-seminorm errors of both components at t = T against the
/// exact solution, with orders in h_max.
RateTable spatial_study(SpaceParams space, MeshFamily family, std::span<const int> n_list,
                        const TimeSpec& time, double T, int mms_id,
                        const StudyOptions& opts = {});

/// Temporal-order study on one fixed spatial grid: a reference run with
/// M_ref steps is computed once, then for each M the modified error
/// E* = ||V^M - V^{M_ref}|| is evaluated exactly via the Gram matrix of the
/// shared space, with orders in k. The true L^2 errors of the reference run
/// are reported in the metadata as E_ref_eta / E_ref_u.
RateTable temporal_study(SpaceParams space, MeshFamily family, int n,
                         std::span<const int> m_list, int m_ref, double T, int mms_id,
                         const StudyOptions& opts = {});

enum class ProjectionTarget { smooth, nonsmooth };

/// L^2-project the target on each mesh in the list and tabulate L^2, H^1,
/// H^2, H^3 seminorms, the full H^3 norm, and Linf, with orders in h_max.
/// Requires r >= 4 (the H^3 seminorm needs degree >= 3).
RateTable projection_study(SpaceParams space, MeshFamily family, std::span<const int> n_list,
                           ProjectionTarget target, const StudyOptions& opts = {});

}  // namespace swg
