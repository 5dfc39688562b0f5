#pragma once

#include <functional>
#include <span>
#include <vector>

#include "swg/mesh.hpp"

namespace swg {

/// Gauss-Legendre rule on the reference interval [-1,1].
/// An n-point rule integrates polynomials of degree <= 2n-1 exactly.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }

    /// Nodes and weights for 1 <= n <= 32, accurate to ~1e-15.
    static QuadratureRule gauss(int n);
};

/// Integrate f over [0,1] element by element on the mesh. Elements are split
/// at any extra_breaks lying strictly inside them, so integrands that are
/// piecewise smooth with breaks off the mesh are still integrated at full
/// Gauss accuracy. extra_breaks must be sorted and contained in (0,1).
double integrate(const Mesh& mesh, const QuadratureRule& rule,
                 const std::function<double(double)>& f,
                 std::span<const double> extra_breaks = {});

/// Integrate f over the single interval [a,b] split at interior breaks.
double integrate_interval(double a, double b, const QuadratureRule& rule,
                          const std::function<double(double)>& f,
                          std::span<const double> extra_breaks = {});

}  // namespace swg
