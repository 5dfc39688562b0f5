#include "swg/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swg/errors.hpp"

namespace swg {

int default_quad_points(const SplineSpace& space) { return space.order() + 2; }

BandedSpdMatrix assemble_gram(const SplineSpace& space, int deriv, int quad_points) {
    const int nq = quad_points > 0 ? quad_points : default_quad_points(space);
    const QuadratureRule rule = QuadratureRule::gauss(nq);
    const Mesh& mesh = space.mesh();

    BandedSpdMatrix gram(space.dim(), space.degree());
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double a = mesh.breakpoint(e);
        const double b = mesh.breakpoint(e + 1);
        const double mid = 0.5 * (a + b);
        const double hal = 0.5 * (b - a);
        for (int q = 0; q < rule.size(); ++q) {
            const double x = mid + hal * rule.points[q];
            const double w = hal * rule.weights[q];
            const BasisValues bv = space.eval_basis(x, deriv);
            for (int ki = 0; ki < bv.count; ++ki) {
                const int i = bv.first + ki;
                if (i < 0 || i >= space.dim()) continue;
                for (int kj = 0; kj <= ki; ++kj) {
                    const int j = bv.first + kj;
                    if (j < 0) continue;
                    gram.add(i, j, w * bv.values[ki] * bv.values[kj]);
                }
            }
        }
    }
    return gram;
}

namespace {

// Extended-precision banded Cholesky used by the standalone projection:
// errors of fine-mesh projections sit at the 1e-15 scale, where the
// summation rounding of a double assembly/solve is already visible.
struct ExtBanded {
    int n, kd;
    std::vector<long double> band;  // packed lower

    ExtBanded(int dim, int bandwidth)
        : n(dim), kd(bandwidth),
          band(static_cast<std::size_t>(dim) * (bandwidth + 1), 0.0L) {}

    long double& at(int i, int j) {
        return band[static_cast<std::size_t>(i) * (kd + 1) + (j - i + kd)];
    }
    long double get(int i, int j) const {
        if (j > i) std::swap(i, j);
        if (i - j > kd) return 0.0L;
        return band[static_cast<std::size_t>(i) * (kd + 1) + (j - i + kd)];
    }

    void factorize() {
        for (int j = 0; j < n; ++j) {
            long double diag = at(j, j);
            for (int k = std::max(0, j - kd); k < j; ++k) diag -= at(j, k) * at(j, k);
            if (!(diag > 0.0L))
                throw SingularMatrixError("projection Gram factorization failed at row " +
                                          std::to_string(j));
            at(j, j) = std::sqrt(static_cast<long double>(diag));
            const int iend = std::min(n - 1, j + kd);
            for (int i = j + 1; i <= iend; ++i) {
                long double s = at(i, j);
                for (int k = std::max(0, i - kd); k < j; ++k) s -= at(i, k) * at(j, k);
                at(i, j) = s / at(j, j);
            }
        }
    }

    std::vector<long double> solve(std::vector<long double> x) const {
        for (int i = 0; i < n; ++i) {
            long double s = x[i];
            for (int k = std::max(0, i - kd); k < i; ++k) s -= get(i, k) * x[k];
            x[i] = s / get(i, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            long double s = x[i];
            const int kend = std::min(n - 1, i + kd);
            for (int k = i + 1; k <= kend; ++k) s -= get(k, i) * x[k];
            x[i] = s / get(i, i);
        }
        return x;
    }
};

std::vector<long double> assemble_load_ext(const SplineSpace& space,
                                           const std::function<double(double)>& f,
                                           std::span<const double> f_breaks, int quad_points) {
    const int nq = quad_points > 0 ? quad_points : default_quad_points(space);
    const QuadratureRule rule = QuadratureRule::gauss(nq);
    const Mesh& mesh = space.mesh();

    std::vector<long double> load(static_cast<std::size_t>(space.dim()), 0.0L);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double ea = mesh.breakpoint(e);
        const double eb = mesh.breakpoint(e + 1);
        auto accumulate = [&](double a, double b) {
            const double mid = 0.5 * (a + b);
            const double hal = 0.5 * (b - a);
            for (int q = 0; q < rule.size(); ++q) {
                const double x = mid + hal * rule.points[q];
                const long double w = static_cast<long double>(hal) * rule.weights[q];
                const long double fx = f(x);
                const BasisValues bv = space.eval_basis(x, 0);
                for (int k = 0; k < bv.count; ++k) {
                    const int i = bv.first + k;
                    if (i < 0 || i >= space.dim()) continue;
                    load[i] += w * fx * bv.values[k];
                }
            }
        };
        double lo = ea;
        for (double brk : f_breaks) {
            if (brk <= lo) continue;
            if (brk >= eb) break;
            accumulate(lo, brk);
            lo = brk;
        }
        accumulate(lo, eb);
    }
    return load;
}

std::vector<double> assemble_load(const SplineSpace& space,
                                  const std::function<double(double)>& f,
                                  std::span<const double> f_breaks, int quad_points) {
    const auto load = assemble_load_ext(space, f, f_breaks, quad_points);
    std::vector<double> out(load.size());
    for (std::size_t i = 0; i < load.size(); ++i) out[i] = static_cast<double>(load[i]);
    return out;
}

}  // namespace

ProjectedFunction project(const SplineSpace& space, const BandedSpdMatrix& mass,
                          const std::function<double(double)>& f,
                          std::span<const double> f_breaks, int quad_points) {
    const std::vector<double> load = assemble_load(space, f, f_breaks, quad_points);
    return ProjectedFunction{&space, mass.solve_refined(load)};
}

ProjectedFunction project(const SplineSpace& space, const std::function<double(double)>& f,
                          std::span<const double> f_breaks, int quad_points) {
    const int nq = quad_points > 0 ? quad_points : default_quad_points(space);
    const QuadratureRule rule = QuadratureRule::gauss(nq);
    const Mesh& mesh = space.mesh();

    // The Gram matrix is integrated over the same sub-element decomposition
    // as the load vector: with mixed node sets the two sides of the system
    // disagree at the node-rounding level, which is visible once projection
    // errors approach 1e-15.
    ExtBanded mass(space.dim(), space.degree());
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double ea = mesh.breakpoint(e);
        const double eb = mesh.breakpoint(e + 1);
        auto accumulate = [&](double a, double b) {
            const double mid = 0.5 * (a + b);
            const double hal = 0.5 * (b - a);
            for (int q = 0; q < rule.size(); ++q) {
                const double x = mid + hal * rule.points[q];
                const long double w = static_cast<long double>(hal) * rule.weights[q];
                const BasisValues bv = space.eval_basis(x, 0);
                for (int ki = 0; ki < bv.count; ++ki) {
                    const int i = bv.first + ki;
                    if (i < 0 || i >= space.dim()) continue;
                    for (int kj = 0; kj <= ki; ++kj) {
                        const int j = bv.first + kj;
                        if (j < 0) continue;
                        mass.at(i, j) +=
                            w * static_cast<long double>(bv.values[ki]) * bv.values[kj];
                    }
                }
            }
        };
        double lo = ea;
        for (double brk : f_breaks) {
            if (brk <= lo) continue;
            if (brk >= eb) break;
            accumulate(lo, brk);
            lo = brk;
        }
        accumulate(lo, eb);
    }
    mass.factorize();
    const auto coeffs = mass.solve(assemble_load_ext(space, f, f_breaks, quad_points));

    ProjectedFunction pf{&space, std::vector<double>(coeffs.size())};
    for (std::size_t i = 0; i < coeffs.size(); ++i) pf.coeffs[i] = static_cast<double>(coeffs[i]);
    return pf;
}

ErrorNorms error_norms(const ProjectedFunction& pf, const ScalarField& target, int up_to,
                       int linf_samples, int quad_points) {
    const SplineSpace& space = *pf.space;
    if (up_to < 0 || up_to > 3) throw std::invalid_argument("error_norms: up_to must be in 0..3");
    if (up_to > space.degree())
        throw std::invalid_argument("error_norms: H^" + std::to_string(up_to) +
                                    " requested but space degree is " +
                                    std::to_string(space.degree()));
    const std::function<double(double)>* derivs[4] = {&target.f, &target.d1, &target.d2,
                                                      &target.d3};
    for (int s = 0; s <= up_to; ++s) {
        if (!*derivs[s])
            throw std::invalid_argument("error_norms: missing derivative callback of order " +
                                        std::to_string(s));
    }

    const int nq = quad_points > 0 ? quad_points : default_quad_points(space);
    const QuadratureRule rule = QuadratureRule::gauss(nq);
    const Mesh& mesh = space.mesh();

    // The spline side is evaluated in extended precision so the measured
    // difference stays meaningful down to ~1e-15 error levels.
    ErrorNorms out;
    double* slots[4] = {&out.l2, &out.h1, &out.h2, &out.h3};
    for (int s = 0; s <= up_to; ++s) {
        const auto& exact = *derivs[s];
        const double val = integrate(
            mesh, rule,
            [&](double x) {
                const long double d = pf.space->eval_ld(pf.coeffs, x, s) -
                                      static_cast<long double>(exact(x));
                return static_cast<double>(d * d);
            },
            target.breaks);
        *slots[s] = std::sqrt(std::max(0.0, val));
    }
    if (up_to == 3) {
        out.h3_full =
            std::sqrt(out.l2 * out.l2 + out.h1 * out.h1 + out.h2 * out.h2 + out.h3 * out.h3);
    }

    long double vmax = 0.0L;
    const int m = std::max(1, linf_samples);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double a = mesh.breakpoint(e);
        const double h = mesh.element_length(e);
        for (int j = 0; j <= m; ++j) {
            const double x = (j == m) ? mesh.breakpoint(e + 1) : a + h * j / m;
            const long double d =
                pf.space->eval_ld(pf.coeffs, x, 0) - static_cast<long double>(target.f(x));
            vmax = std::max(vmax, d < 0 ? -d : d);
        }
    }
    out.linf = static_cast<double>(vmax);
    return out;
}

}  // namespace swg
