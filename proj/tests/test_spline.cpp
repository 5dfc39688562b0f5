#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "swg/projection.hpp"
#include "swg/spline.hpp"

using swg::BasisValues;
using swg::Mesh;
using swg::SplineSpace;

namespace {

std::vector<double> random_coeffs(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (double& v : c) v = dist(gen);
    return c;
}

std::vector<double> sample_points(const Mesh& mesh, unsigned seed) {
    std::vector<double> xs{0.0, 1.0};
    for (int i = 0; i <= mesh.num_elements(); ++i) xs.push_back(mesh.breakpoint(i));
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 50; ++i) xs.push_back(dist(gen));
    return xs;
}

}  // namespace

TEST_SUITE_BEGIN("spline");

TEST_CASE("dimension formulas") {
    CHECK(SplineSpace(Mesh::uniform(4), 4, 2).dim() == 7);
    CHECK(SplineSpace(Mesh::uniform(4), 4, 2, true).dim() == 5);
    CHECK(SplineSpace(Mesh::uniform(12), 6, 4).dim() == 17);
    CHECK(SplineSpace(Mesh::quasiuniform_b(9), 5, 3).dim() == 13);
    // Higher interior multiplicity (Hermite-type): dim = r + (N-1)(r-1-mu).
    CHECK(SplineSpace(Mesh::uniform(4), 4, 1).dim() == 10);

    CHECK_THROWS_AS(SplineSpace(Mesh::uniform(4), 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(SplineSpace(Mesh::uniform(4), 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(SplineSpace(Mesh::uniform(4), 2, 1), std::invalid_argument);
}

TEST_CASE("partition of unity and derivative sums") {
    const std::array<SplineSpace, 4> spaces{
        SplineSpace(Mesh::uniform(8), 4, 2), SplineSpace(Mesh::quasiuniform_a(8), 5, 3),
        SplineSpace(Mesh::quasiuniform_b(9), 6, 4), SplineSpace(Mesh::uniform(6), 5, 1)};
    for (const auto& sp : spaces) {
        for (double x : sample_points(sp.mesh(), 7u)) {
            const BasisValues b = sp.eval_basis(x, 0);
            CHECK(b.count == sp.order());
            double sum = 0.0;
            for (int k = 0; k < b.count; ++k) sum += b.values[k];
            CHECK(std::abs(sum - 1.0) <= 1e-13);

            const BasisValues d = sp.eval_basis(x, 1);
            double dsum = 0.0;
            for (int k = 0; k < d.count; ++k) dsum += d.values[k];
            CHECK(std::abs(dsum) <= 1e-10 / sp.mesh().h_min());
        }
    }
}

TEST_CASE("smoothness across interior breakpoints") {
    const SplineSpace sp(Mesh::quasiuniform_a(8), 4, 2);  // C^2 cubics
    const auto coeffs = random_coeffs(sp.dim(), 11u);
    for (int i = 1; i < sp.mesh().num_elements(); ++i) {
        const double xb = sp.mesh().breakpoint(i);
        for (int deriv = 0; deriv <= 2; ++deriv) {
            const double left = sp.eval(coeffs, xb - 1e-12, deriv);
            const double right = sp.eval(coeffs, xb + 1e-12, deriv);
            CHECK(std::abs(left - right) <= 1e-10 * (1.0 + std::abs(left)) / sp.mesh().h_min());
        }
    }
}

TEST_CASE("eval basics") {
    const SplineSpace sp(Mesh::quasiuniform_a(6), 4, 2);
    const std::vector<double> constant(static_cast<std::size_t>(sp.dim()), 0.7);
    const std::vector<double> zero(static_cast<std::size_t>(sp.dim()), 0.0);
    for (double x : sample_points(sp.mesh(), 23u)) {
        CHECK(sp.eval(constant, x) == doctest::Approx(0.7).epsilon(1e-14));
        for (int d = 0; d <= 3; ++d) CHECK(sp.eval(zero, x, d) == 0.0);
    }

    // Linear reproduction from the Greville abscissae.
    const std::vector<double> greville = sp.greville_abscissae();
    for (double x : sample_points(sp.mesh(), 29u)) {
        CHECK(std::abs(sp.eval(greville, x) - x) <= 1e-12);
    }

    CHECK_THROWS_AS(sp.eval(zero, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(sp.eval(zero, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(sp.eval(std::vector<double>(3, 0.0), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(sp.eval_basis(0.5, 4), std::invalid_argument);
}

TEST_CASE("left-limit convention at x = 1") {
    const SplineSpace sp(Mesh::uniform(5), 4, 2);
    const BasisValues b = sp.eval_basis(1.0, 0);
    CHECK(b.first + b.count == sp.dim());
    CHECK(b.values[b.count - 1] == 1.0);
}

TEST_CASE("zero-boundary restriction is exact at the endpoints") {
    const SplineSpace sp(Mesh::quasiuniform_a(8), 5, 3, true);
    const auto coeffs = random_coeffs(sp.dim(), 31u);
    CHECK(sp.eval(coeffs, 0.0) == 0.0);
    CHECK(sp.eval(coeffs, 1.0) == 0.0);
}

TEST_CASE("local support") {
    const SplineSpace sp(Mesh::uniform(8), 4, 2);
    // Index distance >= r means disjoint supports: the pointwise product
    // vanishes identically.
    std::vector<double> ci(static_cast<std::size_t>(sp.dim()), 0.0);
    std::vector<double> cj = ci;
    ci[0] = 1.0;
    cj[4] = 1.0;
    const auto rule = swg::QuadratureRule::gauss(6);
    const double overlap = integrate(sp.mesh(), rule, [&](double x) {
        return sp.eval(ci, x) * sp.eval(cj, x);
    });
    CHECK(overlap == 0.0);
}

TEST_CASE("inverse inequality probe") {
    // ||chi'|| h_max / ||chi|| must stay bounded under refinement: the
    // observed max over random splines may grow by < 5% per halving.
    for (bool quasi : {false, true}) {
        double prev_max = 0.0;
        for (int n : {16, 32, 64, 128}) {
            const Mesh mesh = quasi ? Mesh::quasiuniform_a(n) : Mesh::uniform(n);
            const SplineSpace sp(mesh, 4, 2);
            const auto mass = swg::assemble_gram(sp, 0);
            const auto stiff = swg::assemble_gram(sp, 1);
            double max_ratio = 0.0;
            std::mt19937 gen(1234u + static_cast<unsigned>(n));
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            std::vector<double> c(static_cast<std::size_t>(sp.dim()));
            for (int trial = 0; trial < 200; ++trial) {
                for (double& v : c) v = dist(gen);
                const double l2 = std::sqrt(mass.quadratic_form(c));
                const double h1 = std::sqrt(stiff.quadratic_form(c));
                max_ratio = std::max(max_ratio, h1 * mesh.h_max() / l2);
            }
            if (prev_max > 0.0) CHECK(max_ratio <= 1.05 * prev_max);
            prev_max = max_ratio;
        }
    }
}

TEST_SUITE_END();
