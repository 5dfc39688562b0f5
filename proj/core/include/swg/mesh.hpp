#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace swg {

/// Partition of [0,1] into N elements. Immutable after construction.
///
/// Three families are provided:
///  - uniform(N): N equal elements of length 1/N,
///  - quasiuniform_a(N): alternating lengths 1.2h / 0.8h with h = 1/N, N even,
///  - quasiuniform_b(N): alternating lengths h/2 / 3h/2 with h = 2/(2N-1), N odd.
///
/// The max/min element-length ratio is 1, 1.5 and 3 for the three families
/// and stays fixed under refinement.
class Mesh {
public:
    static Mesh uniform(int num_elements);
    static Mesh quasiuniform_a(int num_elements);
    static Mesh quasiuniform_b(int num_elements);

    /// Arbitrary strictly increasing breakpoints covering [0,1].
    explicit Mesh(std::vector<double> breakpoints);

    std::span<const double> breakpoints() const { return x_; }
    int num_elements() const { return static_cast<int>(x_.size()) - 1; }

    double breakpoint(int i) const { return x_[static_cast<std::size_t>(i)]; }
    double element_length(int e) const { return x_[e + 1] - x_[e]; }

    double h_max() const { return h_max_; }
    double h_min() const { return h_min_; }
    double quasiuniformity_ratio() const { return h_max_ / h_min_; }

    /// Index of the element containing x, with ties at interior breakpoints
    /// resolved to the right and x = 1 belonging to the last element.
    int find_element(double x) const;

    /// One-column CSV of the breakpoints.
    void write_csv(std::ostream& out) const;

    friend bool operator==(const Mesh&, const Mesh&) = default;

private:
    std::vector<double> x_;
    double h_max_ = 0.0;
    double h_min_ = 0.0;
};

}  // namespace swg
