#include "swg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace swg {

namespace {

// Accumulate breakpoints left-to-right from element lengths, then clamp the
// final breakpoint to exactly 1.0 so downstream quadrature covers the domain
// without rounding drift.
Mesh from_lengths(const std::vector<double>& lengths) {
    std::vector<double> x;
    x.reserve(lengths.size() + 1);
    x.push_back(0.0);
    double acc = 0.0;
    for (double h : lengths) {
        acc += h;
        x.push_back(acc);
    }
    // Rounding drift grows with the element count; a genuine tiling bug
    // would be off by a whole element length.
    if (std::abs(x.back() - 1.0) > 1e-12 + 1e-15 * static_cast<double>(lengths.size())) {
        throw std::logic_error("mesh element lengths do not tile [0,1]");
    }
    x.back() = 1.0;
    return Mesh(std::move(x));
}

}  // namespace

Mesh::Mesh(std::vector<double> breakpoints) : x_(std::move(breakpoints)) {
    if (x_.size() < 2) throw std::invalid_argument("Mesh: need at least two breakpoints");
    if (x_.front() != 0.0 || x_.back() != 1.0)
        throw std::invalid_argument("Mesh: breakpoints must start at 0 and end at 1");
    h_max_ = 0.0;
    h_min_ = 1.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double h = x_[i + 1] - x_[i];
        if (h <= 0.0) throw std::invalid_argument("Mesh: breakpoints must be strictly increasing");
        h_max_ = std::max(h_max_, h);
        h_min_ = std::min(h_min_, h);
    }
}

Mesh Mesh::uniform(int num_elements) {
    if (num_elements < 1) throw std::invalid_argument("uniform mesh: N must be positive");
    const double h = 1.0 / num_elements;
    std::vector<double> lengths(static_cast<std::size_t>(num_elements), h);
    return from_lengths(lengths);
}

Mesh Mesh::quasiuniform_a(int num_elements) {
    if (num_elements < 1) throw std::invalid_argument("quasiuniform mesh A: N must be positive");
    if (num_elements % 2 != 0)
        throw std::invalid_argument("quasiuniform mesh A: N must be even, got " +
                                    std::to_string(num_elements));
    const double h = 1.0 / num_elements;
    std::vector<double> lengths(static_cast<std::size_t>(num_elements));
    // Elements counted from 1: odd elements are long (1.2h), even are short (0.8h).
    for (int i = 1; i <= num_elements; ++i) {
        lengths[i - 1] = (i % 2 == 1) ? 1.2 * h : 0.8 * h;
    }
    return from_lengths(lengths);
}

Mesh Mesh::quasiuniform_b(int num_elements) {
    if (num_elements < 1) throw std::invalid_argument("quasiuniform mesh B: N must be positive");
    if (num_elements % 2 != 1)
        throw std::invalid_argument(
            "quasiuniform mesh B: N must be odd (use the uniform mesh for even N), got " +
            std::to_string(num_elements));
    const double h = 2.0 / (2 * num_elements - 1);
    std::vector<double> lengths(static_cast<std::size_t>(num_elements));
    // Odd elements are short (h/2), even are long (3h/2).
    for (int i = 1; i <= num_elements; ++i) {
        lengths[i - 1] = (i % 2 == 1) ? 0.5 * h : 1.5 * h;
    }
    return from_lengths(lengths);
}

int Mesh::find_element(double x) const {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("find_element: x outside [0,1]");
    if (x >= 1.0) return num_elements() - 1;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<int>(it - x_.begin()) - 1;
}

void Mesh::write_csv(std::ostream& out) const {
    out << "breakpoint\n";
    char buf[32];
    for (double v : x_) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
}

}  // namespace swg
