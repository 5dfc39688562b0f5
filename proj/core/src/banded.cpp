#include "swg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swg/errors.hpp"

namespace swg {

BandedSpdMatrix::BandedSpdMatrix(int dim, int bandwidth) : dim_(dim), kd_(bandwidth) {
    if (dim < 1) throw std::invalid_argument("BandedSpdMatrix: dim must be positive");
    if (bandwidth < 0) throw std::invalid_argument("BandedSpdMatrix: negative bandwidth");
    band_.assign(static_cast<std::size_t>(dim) * (kd_ + 1), 0.0);
}

double BandedSpdMatrix::operator()(int i, int j) const {
    if (j > i) std::swap(i, j);
    if (i - j > kd_) return 0.0;
    return lower(i, j);
}

void BandedSpdMatrix::add(int i, int j, double value) {
    if (j > i) std::swap(i, j);
    if (i - j > kd_) throw std::invalid_argument("BandedSpdMatrix::add: entry outside band");
    lower(i, j) += value;
}

void BandedSpdMatrix::factorize() const {
    if (factorized_) return;
    factor_ = band_;
    auto L = [&](int i, int j) -> double& {
        return factor_[static_cast<std::size_t>(i) * (kd_ + 1) + (j - i + kd_)];
    };
    for (int j = 0; j < dim_; ++j) {
        double diag = L(j, j);
        for (int k = std::max(0, j - kd_); k < j; ++k) {
            const double ljk = L(j, k);
            diag -= ljk * ljk;
        }
        if (!(diag > 0.0)) {
            throw SingularMatrixError("banded Cholesky: non-positive pivot at row " +
                                      std::to_string(j));
        }
        const double ljj = std::sqrt(diag);
        L(j, j) = ljj;
        const int iend = std::min(dim_ - 1, j + kd_);
        for (int i = j + 1; i <= iend; ++i) {
            double s = L(i, j);
            for (int k = std::max(0, i - kd_); k < j; ++k) {
                s -= L(i, k) * L(j, k);
            }
            L(i, j) = s / ljj;
        }
    }
    factorized_ = true;
}

std::vector<double> BandedSpdMatrix::solve(std::span<const double> rhs) const {
    if (static_cast<int>(rhs.size()) != dim_)
        throw std::invalid_argument("BandedSpdMatrix::solve: rhs size mismatch");
    factorize();
    auto L = [&](int i, int j) {
        return factor_[static_cast<std::size_t>(i) * (kd_ + 1) + (j - i + kd_)];
    };
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 0; i < dim_; ++i) {  // L y = b
        double s = x[i];
        for (int k = std::max(0, i - kd_); k < i; ++k) s -= L(i, k) * x[k];
        x[i] = s / L(i, i);
    }
    for (int i = dim_ - 1; i >= 0; --i) {  // L^T x = y
        double s = x[i];
        const int kend = std::min(dim_ - 1, i + kd_);
        for (int k = i + 1; k <= kend; ++k) s -= L(k, i) * x[k];
        x[i] = s / L(i, i);
    }
    return x;
}

std::vector<double> BandedSpdMatrix::solve_refined(std::span<const double> rhs) const {
    std::vector<double> x = solve(rhs);
    std::vector<double> r(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        long double acc = rhs[i];
        const int jbeg = std::max(0, i - kd_);
        const int jend = std::min(dim_ - 1, i + kd_);
        for (int j = jbeg; j <= jend; ++j) {
            acc -= static_cast<long double>((*this)(i, j)) * static_cast<long double>(x[j]);
        }
        r[i] = static_cast<double>(acc);
    }
    const std::vector<double> dx = solve(r);
    for (int i = 0; i < dim_; ++i) x[i] += dx[i];
    return x;
}

double BandedSpdMatrix::quadratic_form(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("BandedSpdMatrix::quadratic_form: size mismatch");
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) {
        sum += lower(i, i) * v[i] * v[i];
        const int jbeg = std::max(0, i - kd_);
        double off = 0.0;
        for (int j = jbeg; j < i; ++j) off += lower(i, j) * v[j];
        sum += 2.0 * off * v[i];
    }
    return sum;
}

}  // namespace swg
