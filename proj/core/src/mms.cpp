#include "swg/mms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swg {

namespace {

constexpr double kPi = std::numbers::pi;

// Shared velocity u = exp(-x t) sin(pi x).
double u_fn(double x, double t) { return std::exp(-x * t) * std::sin(kPi * x); }
double u_x_fn(double x, double t) {
    return std::exp(-x * t) * (kPi * std::cos(kPi * x) - t * std::sin(kPi * x));
}
double u_t_fn(double x, double t) { return -x * u_fn(x, t); }

ManufacturedSolution make_mms1() {
    ManufacturedSolution m;
    m.id = 1;
    auto A = [](double x) { return x + std::cos(kPi * x) + 2.0; };
    auto Ax = [](double x) { return 1.0 - kPi * std::sin(kPi * x); };
    m.eta = [A](double x, double t) { return std::exp(2.0 * t) * A(x); };
    m.eta_x = [Ax](double x, double t) { return std::exp(2.0 * t) * Ax(x); };
    m.eta_t = [A](double x, double t) { return 2.0 * std::exp(2.0 * t) * A(x); };
    m.u = u_fn;
    m.u_x = u_x_fn;
    m.u_t = u_t_fn;
    m.forcing.g_eta = [m](double x, double t) {
        return m.eta_t(x, t) + (1.0 + m.eta(x, t)) * m.u_x(x, t) + m.eta_x(x, t) * m.u(x, t);
    };
    m.forcing.g_u = [m](double x, double t) {
        return m.u_t(x, t) + m.eta_x(x, t) + m.u(x, t) * m.u_x(x, t);
    };
    return m;
}

ManufacturedSolution make_mms2() {
    ManufacturedSolution m;
    m.id = 2;
    auto B = [](double x) { return x + std::cos(kPi * x); };
    auto Bx = [](double x) { return 1.0 - kPi * std::sin(kPi * x); };
    m.eta = [B](double x, double t) { return std::exp(-4.0 * t * t) * B(x); };
    m.eta_x = [Bx](double x, double t) { return std::exp(-4.0 * t * t) * Bx(x); };
    m.eta_t = [B](double x, double t) { return -8.0 * t * std::exp(-4.0 * t * t) * B(x); };
    m.u = u_fn;
    m.u_x = u_x_fn;
    m.u_t = u_t_fn;
    m.forcing.g_eta = [m](double x, double t) {
        return m.eta_t(x, t) + (1.0 + m.eta(x, t)) * m.u_x(x, t) + m.eta_x(x, t) * m.u(x, t);
    };
    m.forcing.g_u = [m](double x, double t) {
        return m.u_t(x, t) + m.eta_x(x, t) + m.u(x, t) * m.u_x(x, t);
    };
    return m;
}

}  // namespace

const ManufacturedSolution& manufactured_solution(int id) {
    static const ManufacturedSolution mms1 = make_mms1();
    static const ManufacturedSolution mms2 = make_mms2();
    if (id == 1) return mms1;
    if (id == 2) return mms2;
    throw std::invalid_argument("manufactured_solution: id must be 1 or 2");
}

}  // namespace swg
