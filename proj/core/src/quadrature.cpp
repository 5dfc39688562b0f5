#include "swg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swg {

QuadratureRule QuadratureRule::gauss(int n) {
    if (n < 1 || n > 32) throw std::invalid_argument("gauss rule: n must be in 1..32");

    QuadratureRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);

    // Newton iteration on P_n. Roots are symmetric about 0, so only the
    // lower half is computed.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
            double p0 = 1.0, p1 = x;
            for (int j = 1; j < n; ++j) {
                const double p2 = ((2 * j + 1) * x * p1 - j * p0) / (j + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.points[i] = -x;
        rule.points[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.points[n / 2] = 0.0;
    return rule;
}

double integrate_interval(double a, double b, const QuadratureRule& rule,
                          const std::function<double(double)>& f,
                          std::span<const double> extra_breaks) {
    double sum = 0.0;
    double lo = a;
    auto accumulate = [&](double s, double e) {
        const double mid = 0.5 * (s + e);
        const double hal = 0.5 * (e - s);
        double acc = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
            acc += rule.weights[q] * f(mid + hal * rule.points[q]);
        }
        sum += hal * acc;
    };
    for (double brk : extra_breaks) {
        if (brk <= lo) continue;
        if (brk >= b) break;
        accumulate(lo, brk);
        lo = brk;
    }
    accumulate(lo, b);
    return sum;
}

double integrate(const Mesh& mesh, const QuadratureRule& rule,
                 const std::function<double(double)>& f,
                 std::span<const double> extra_breaks) {
    double sum = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        sum += integrate_interval(mesh.breakpoint(e), mesh.breakpoint(e + 1), rule, f,
                                  extra_breaks);
    }
    return sum;
}

}  // namespace swg
