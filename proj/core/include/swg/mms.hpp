#pragma once

#include <functional>

namespace swg {

/// Source terms g_eta, g_u added to the right-hand sides of the system.
struct Forcing {
    std::function<double(double, double)> g_eta;  // (x, t)
    std::function<double(double, double)> g_u;
};

/// Closed-form exact solution with the space/time derivatives needed for
/// error measurement, plus the forcing that makes it satisfy the system
/// exactly:
///   g_eta = eta_t + u_x + (eta u)_x,   g_u = u_t + eta_x + u u_x.
struct ManufacturedSolution {
    int id = 0;
    std::function<double(double, double)> eta, eta_x, eta_t;
    std::function<double(double, double)> u, u_x, u_t;
    Forcing forcing;
};

/// The two bundled manufactured solutions. Both have u(0,t) = u(1,t) = 0.
///   1: eta = exp(2t) (x + cos(pi x) + 2),  u = exp(-x t) sin(pi x)
///   2: eta = exp(-4 t^2) (x + cos(pi x)),  u = exp(-t x) sin(pi x)
const ManufacturedSolution& manufactured_solution(int id);

}  // namespace swg
