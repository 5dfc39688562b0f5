#pragma once

#include <array>
#include <span>
#include <vector>

#include "swg/mesh.hpp"

namespace swg {

/// Values of the basis functions supported at a point. `first` is the index
/// of values[0] in the numbering of the owning space; with a zero-boundary
/// space it can be -1 (resp. reach dim()) for points near the endpoints,
/// meaning that entry belongs to a dropped boundary function.
struct BasisValues {
    int first = 0;
    int count = 0;
    std::array<double, 12> values{};
};

/// Basis values and derivatives 0..nders at a point, same indexing rules.
struct BasisDerivs {
    int first = 0;
    int count = 0;
    int nders = 0;
    std::array<std::array<double, 12>, 4> d{};
};

/// Piecewise-polynomial space of degree r-1 and global smoothness C^mu over
/// a mesh, represented in the clamped B-spline basis: endpoint knots of
/// multiplicity r, interior knots of multiplicity r-1-mu. Requires r >= 3 and
/// 1 <= mu <= r-2. With zero_bc the first and last basis functions are
/// dropped, which restricts to the subspace vanishing at x=0 and x=1.
///
/// Immutable after construction; evaluation is reentrant.
class SplineSpace {
public:
    static constexpr int kMaxOrder = 12;  // largest supported r
    static constexpr int kMaxDeriv = 3;   // highest derivative (H^3 norms)

    SplineSpace(Mesh mesh, int order, int smoothness, bool zero_bc = false);

    const Mesh& mesh() const { return mesh_; }
    int order() const { return order_; }        // r
    int degree() const { return order_ - 1; }   // polynomial degree
    int smoothness() const { return smoothness_; }
    bool zero_bc() const { return zero_bc_; }

    /// Basis count after any boundary restriction.
    int dim() const { return full_dim_ - 2 * offset_; }

    std::span<const double> knots() const { return knots_; }

    /// The r basis functions supported at x, differentiated deriv times.
    /// Evaluation at x = 1 uses the left-limit convention.
    BasisValues eval_basis(double x, int deriv = 0) const;

    /// All derivative orders 0..max_deriv in one pass.
    BasisDerivs eval_basis_derivs(double x, int max_deriv) const;

    /// Evaluate sum_i coeffs[i] B_i^(deriv)(x); coeffs.size() must equal dim().
    double eval(std::span<const double> coeffs, double x, int deriv = 0) const;

    /// Same evaluation carried out in extended precision, for error
    /// measurement near the double roundoff floor.
    long double eval_ld(std::span<const double> coeffs, double x, int deriv = 0) const;

    /// Knot averages; the spline with these coefficients reproduces x exactly.
    /// Indexed like the space's own basis (boundary functions excluded when
    /// zero_bc is set).
    std::vector<double> greville_abscissae() const;

private:
    int find_span(double x) const;

    Mesh mesh_;
    int order_;
    int smoothness_;
    bool zero_bc_;
    int offset_;     // 1 when zero_bc, else 0
    int full_dim_;   // basis count before boundary restriction
    std::vector<double> knots_;
};

}  // namespace swg
