#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "swg/banded.hpp"
#include "swg/errors.hpp"

using swg::BandedSpdMatrix;

namespace {

// Dense Gaussian elimination, the independent route for small systems.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int row = n - 1; row >= 0; --row) {
        double s = b[row];
        for (int j = row + 1; j < n; ++j) s -= a[row][j] * x[j];
        x[row] = s / a[row][row];
    }
    return x;
}

}  // namespace

TEST_SUITE_BEGIN("banded");

TEST_CASE("solve matches dense elimination") {
    const int n = 9, kd = 3;
    BandedSpdMatrix m(n, kd);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    std::mt19937 gen(99u);
    std::uniform_real_distribution<double> dist(-0.4, 0.4);
    for (int i = 0; i < n; ++i) {
        m.add(i, i, 4.0);
        dense[i][i] = 4.0;
        for (int j = std::max(0, i - kd); j < i; ++j) {
            const double v = dist(gen);
            m.add(i, j, v);
            dense[i][j] = dense[j][i] = v;
        }
    }
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (double& v : rhs) v = dist(gen);

    const auto x = m.solve(rhs);
    const auto x_ref = dense_solve(dense, rhs);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(x_ref[i]).epsilon(1e-12));
    CHECK(m.is_factorized());

    // Residual through the accessor, which reads the unfactored band.
    for (int i = 0; i < n; ++i) {
        double r = rhs[i];
        for (int j = 0; j < n; ++j) r -= m(i, j) * x[j];
        CHECK(std::abs(r) <= 1e-13);
    }
}

TEST_CASE("quadratic form") {
    const int n = 7, kd = 2;
    BandedSpdMatrix m(n, kd);
    std::mt19937 gen(7u);
    std::uniform_real_distribution<double> dist(-0.3, 0.3);
    for (int i = 0; i < n; ++i) {
        m.add(i, i, 2.0);
        for (int j = std::max(0, i - kd); j < i; ++j) m.add(i, j, dist(gen));
    }
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& w : v) w = dist(gen);
    double expected = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) expected += v[i] * m(i, j) * v[j];
    CHECK(m.quadratic_form(v) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("error paths") {
    BandedSpdMatrix zero(4, 1);
    CHECK_THROWS_AS(zero.factorize(), swg::SingularMatrixError);

    BandedSpdMatrix m(4, 1);
    CHECK_THROWS_AS(m.add(0, 3, 1.0), std::invalid_argument);
    CHECK(m(0, 3) == 0.0);

    // Indefinite matrix: Cholesky must refuse.
    BandedSpdMatrix indef(2, 1);
    indef.add(0, 0, 1.0);
    indef.add(1, 1, 1.0);
    indef.add(1, 0, 2.0);
    CHECK_THROWS_AS(indef.factorize(), swg::SingularMatrixError);
}

TEST_SUITE_END();
