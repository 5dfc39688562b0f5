#include "swg/spline.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace swg {

namespace {

// Triangular table of basis values and knot differences, then the derivative
// recombination (Piegl & Tiller A2.3). Templated so error measurement can run
// the same kernel in extended precision; knots and x stay double.
template <typename Real>
void basis_derivs_kernel(const double* U, int span, int p, double x, int max_deriv,
                         Real out[4][SplineSpace::kMaxOrder]) {
    Real ndu[SplineSpace::kMaxOrder][SplineSpace::kMaxOrder];
    Real left[SplineSpace::kMaxOrder], right[SplineSpace::kMaxOrder];
    Real a[2][SplineSpace::kMaxOrder];

    ndu[0][0] = Real(1);
    for (int j = 1; j <= p; ++j) {
        left[j] = Real(x) - Real(U[span + 1 - j]);
        right[j] = Real(U[span + j]) - Real(x);
        Real saved = Real(0);
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const Real temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    for (int j = 0; j <= p; ++j) out[0][j] = ndu[j][p];

    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = Real(1);
        for (int k = 1; k <= max_deriv; ++k) {
            Real dv = Real(0);
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                dv = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                dv += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                dv += a[s2][k] * ndu[r][pk];
            }
            out[k][r] = dv;
            std::swap(s1, s2);
        }
    }

    Real factor = Real(p);
    for (int k = 1; k <= max_deriv; ++k) {
        for (int j = 0; j <= p; ++j) out[k][j] *= factor;
        factor *= Real(p - k);
    }
}

}  // namespace

SplineSpace::SplineSpace(Mesh mesh, int order, int smoothness, bool zero_bc)
    : mesh_(std::move(mesh)), order_(order), smoothness_(smoothness), zero_bc_(zero_bc),
      offset_(zero_bc ? 1 : 0) {
    if (order_ < 3 || order_ > kMaxOrder)
        throw std::invalid_argument("SplineSpace: order r must be in 3.." +
                                    std::to_string(kMaxOrder));
    if (smoothness_ < 1 || smoothness_ > order_ - 2)
        throw std::invalid_argument("SplineSpace: smoothness mu must satisfy 1 <= mu <= r-2");

    const int n_elems = mesh_.num_elements();
    const int interior_mult = order_ - 1 - smoothness_;
    full_dim_ = order_ + (n_elems - 1) * interior_mult;
    if (dim() < 1) throw std::invalid_argument("SplineSpace: space is empty");

    knots_.reserve(2 * order_ + (n_elems - 1) * interior_mult);
    knots_.insert(knots_.end(), order_, 0.0);
    for (int i = 1; i < n_elems; ++i) {
        knots_.insert(knots_.end(), interior_mult, mesh_.breakpoint(i));
    }
    knots_.insert(knots_.end(), order_, 1.0);
}

int SplineSpace::find_span(double x) const {
    const int last = full_dim_ - 1;
    if (x >= knots_[last + 1]) return last;
    auto it = std::upper_bound(knots_.begin() + degree(), knots_.begin() + last + 1, x);
    return static_cast<int>(it - knots_.begin()) - 1;
}

BasisDerivs SplineSpace::eval_basis_derivs(double x, int max_deriv) const {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("eval_basis: x outside [0,1]");
    if (max_deriv < 0 || max_deriv > kMaxDeriv || max_deriv > degree())
        throw std::invalid_argument("eval_basis: derivative order out of range");

    const int p = degree();
    const int span = find_span(x);

    BasisDerivs out;
    out.first = span - p - offset_;
    out.count = p + 1;
    out.nders = max_deriv;
    double d[4][kMaxOrder];
    basis_derivs_kernel<double>(knots_.data(), span, p, x, max_deriv, d);
    for (int k = 0; k <= max_deriv; ++k) {
        for (int j = 0; j <= p; ++j) out.d[k][j] = d[k][j];
    }
    return out;
}

BasisValues SplineSpace::eval_basis(double x, int deriv) const {
    const BasisDerivs all = eval_basis_derivs(x, deriv);
    BasisValues out;
    out.first = all.first;
    out.count = all.count;
    out.values = all.d[deriv];
    return out;
}

double SplineSpace::eval(std::span<const double> coeffs, double x, int deriv) const {
    if (static_cast<int>(coeffs.size()) != dim())
        throw std::invalid_argument("eval: coefficient count does not match space dimension");
    const BasisValues b = eval_basis(x, deriv);
    double sum = 0.0;
    for (int k = 0; k < b.count; ++k) {
        const int idx = b.first + k;
        if (idx < 0 || idx >= dim()) continue;  // dropped boundary function
        sum += coeffs[idx] * b.values[k];
    }
    return sum;
}

long double SplineSpace::eval_ld(std::span<const double> coeffs, double x, int deriv) const {
    if (static_cast<int>(coeffs.size()) != dim())
        throw std::invalid_argument("eval_ld: coefficient count does not match space dimension");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("eval_ld: x outside [0,1]");
    if (deriv < 0 || deriv > kMaxDeriv || deriv > degree())
        throw std::invalid_argument("eval_ld: derivative order out of range");

    const int p = degree();
    const int span = find_span(x);
    long double d[4][kMaxOrder];
    basis_derivs_kernel<long double>(knots_.data(), span, p, x, deriv, d);
    long double sum = 0.0L;
    for (int k = 0; k <= p; ++k) {
        const int idx = span - p - offset_ + k;
        if (idx < 0 || idx >= dim()) continue;
        sum += static_cast<long double>(coeffs[idx]) * d[deriv][k];
    }
    return sum;
}

std::vector<double> SplineSpace::greville_abscissae() const {
    const int p = degree();
    std::vector<double> xi(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
        double s = 0.0;
        for (int j = 1; j <= p; ++j) s += knots_[i + offset_ + j];
        xi[i] = s / p;
    }
    return xi;
}

}  // namespace swg
