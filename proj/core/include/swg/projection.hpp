#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "swg/banded.hpp"
#include "swg/quadrature.hpp"
#include "swg/spline.hpp"

namespace swg {

/// A spline expansion: coefficient vector on a space owned elsewhere.
struct ProjectedFunction {
    const SplineSpace* space = nullptr;
    std::vector<double> coeffs;

    double eval(double x, int deriv = 0) const { return space->eval(coeffs, x, deriv); }
};

/// Scalar function together with its derivatives up to third order and the
/// break points of the highest one. Unused derivative slots may be empty.
struct ScalarField {
    std::function<double(double)> f;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;
    std::vector<double> breaks;
};

/// Error norms of pf - f. Entries above the requested order are NaN.
struct ErrorNorms {
    double l2 = std::numeric_limits<double>::quiet_NaN();
    double linf = std::numeric_limits<double>::quiet_NaN();
    double h1 = std::numeric_limits<double>::quiet_NaN();   // |.|_1 seminorm
    double h2 = std::numeric_limits<double>::quiet_NaN();
    double h3 = std::numeric_limits<double>::quiet_NaN();
    double h3_full = std::numeric_limits<double>::quiet_NaN();  // full H^3 norm
};

/// Default Gauss point count per (sub-)element: r + 2. Mass matrices need
/// degree 2(r-1), the nonlinear Galerkin loads 3(r-1)-1.
int default_quad_points(const SplineSpace& space);

/// Gram matrix of the deriv-th basis derivatives, (B_i^(d), B_j^(d)).
/// deriv = 0 gives the mass matrix. Bandwidth r-1.
BandedSpdMatrix assemble_gram(const SplineSpace& space, int deriv = 0, int quad_points = 0);

/// L^2 projection onto the space: solves M c = b with b_i = (f, B_i).
/// Quadrature elements are split at f_breaks.
ProjectedFunction project(const SplineSpace& space, const std::function<double(double)>& f,
                          std::span<const double> f_breaks = {}, int quad_points = 0);

/// L^2 projection reusing an already assembled (and possibly factorized)
/// mass matrix.
ProjectedFunction project(const SplineSpace& space, const BandedSpdMatrix& mass,
                          const std::function<double(double)>& f,
                          std::span<const double> f_breaks = {}, int quad_points = 0);

/// Norms of pf - target: L^2 and Linf always, H^s seminorms for s <= up_to,
/// and the full H^3 norm when up_to = 3. Requesting order s needs the
/// derivative callbacks up to s and space degree >= s. The Linf norm samples
/// linf_samples points per element plus the element endpoints.
ErrorNorms error_norms(const ProjectedFunction& pf, const ScalarField& target, int up_to = 3,
                       int linf_samples = 20, int quad_points = 0);

}  // namespace swg
