#pragma once

#include <span>
#include <vector>

namespace swg {

/// Symmetric positive-definite banded matrix in packed lower-band storage,
/// with a banded Cholesky factorization (no pivoting). Used for the Gram
/// (mass) matrices of spline bases, which are SPD and well conditioned.
///
/// Entry (i,j) is stored iff |i-j| <= bandwidth. The factorization is
/// computed lazily on the first solve; factorize() can be called eagerly
/// when the matrix is shared across threads afterwards.
class BandedSpdMatrix {
public:
    BandedSpdMatrix(int dim, int bandwidth);

    int dim() const { return dim_; }
    int bandwidth() const { return kd_; }

    /// Symmetric read access; zero outside the band.
    double operator()(int i, int j) const;

    /// Accumulate into entry (i,j). Only one triangle is stored, so adding
    /// to (i,j) and (j,i) is the same operation.
    void add(int i, int j, double value);

    /// Banded Cholesky A = L L^T. Throws SingularMatrixError on a
    /// non-positive pivot. Idempotent.
    void factorize() const;
    bool is_factorized() const { return factorized_; }

    /// Solve A x = rhs. Factorizes on first use.
    std::vector<double> solve(std::span<const double> rhs) const;

    /// Solve with one iterative-refinement pass (extended-precision
    /// residual); brings the solution to within a few ulps. Used where
    /// coefficient noise would pollute error measurements near the roundoff
    /// floor.
    std::vector<double> solve_refined(std::span<const double> rhs) const;

    /// v^T A v, evaluated from the unfactored band.
    double quadratic_form(std::span<const double> v) const;

private:
    double& lower(int i, int j) { return band_[static_cast<std::size_t>(i) * (kd_ + 1) + (j - i + kd_)]; }
    double lower(int i, int j) const { return band_[static_cast<std::size_t>(i) * (kd_ + 1) + (j - i + kd_)]; }

    int dim_;
    int kd_;
    std::vector<double> band_;             // A, packed lower
    mutable std::vector<double> factor_;   // L, same layout
    mutable bool factorized_ = false;
};

}  // namespace swg
