#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swg/banded.hpp"
#include "swg/mms.hpp"
#include "swg/projection.hpp"
#include "swg/spline.hpp"

namespace swg {

/// Classical 4-stage explicit Runge-Kutta scheme: stage coefficients a,
/// combination weights b, stage times c.
struct RkTableau {
    std::array<double, 3> a{0.5, 0.5, 1.0};
    std::array<double, 4> b{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    std::array<double, 4> c{0.0, 0.5, 0.5, 1.0};
};
inline constexpr RkTableau classical_rk4{};

/// Discrete solution pair at one time level: surface elevation on the full
/// space and velocity on the zero-boundary subspace, over a shared mesh.
struct State {
    ProjectedFunction eta;
    ProjectedFunction vel;
    double time = 0.0;
};

/// Pointwise evaluators of the nonlinear fluxes
///   Phi = U + H U,   F = H_x + U U_x
/// for a coefficient pair on spaces over a shared mesh.
class FluxPair {
public:
    FluxPair(const SplineSpace& eta_space, std::span<const double> eta,
             const SplineSpace& vel_space, std::span<const double> vel);

    double phi(double x) const;
    double phi_x(double x) const;  // U_x + H_x U + H U_x
    double f(double x) const;

private:
    const SplineSpace* eta_space_;
    const SplineSpace* vel_space_;
    std::vector<double> eta_;
    std::vector<double> vel_;
};

/// Fully discrete Galerkin / RK4 scheme for the 1D shallow water system
///
///   eta_t + u_x + (eta u)_x = g_eta,
///   u_t + eta_x + u u_x = g_u,          u(0,t) = u(1,t) = 0,
///
/// on a shared mesh: elevation in the full spline space, velocity in the
/// zero-boundary subspace. Each stage projects the flux derivatives onto the
/// spaces via the (prefactorized) mass matrices; the update is the classical
/// RK4 combination. Forcing, when present, is evaluated at the standard
/// stage times t + c_j k.
///
/// Immutable after construction; all methods are const and a single system
/// may drive several evolutions concurrently.
class SwSystem {
public:
    SwSystem(const SplineSpace& eta_space, const SplineSpace& vel_space, int quad_points = 0);

    const SplineSpace& eta_space() const { return *eta_space_; }
    const SplineSpace& vel_space() const { return *vel_space_; }
    const BandedSpdMatrix& eta_mass() const { return eta_mass_; }
    const BandedSpdMatrix& vel_mass() const { return vel_mass_; }

    /// L^2 projections of the initial data onto the two spaces.
    State initial_state(const std::function<double(double)>& eta0,
                        const std::function<double(double)>& u0) const;

    /// Time derivative of the semidiscrete system at coefficient pair
    /// (eta, vel): deta = P[-Phi_x + g_eta], dvel = P0[-F + g_u].
    std::pair<std::vector<double>, std::vector<double>> galerkin_rhs(
        std::span<const double> eta, std::span<const double> vel, double t,
        const Forcing* forcing = nullptr) const;

    /// One RK4 step of size k. Throws BlowUpError when the step produces
    /// non-finite coefficients or coefficients beyond 1e10 in magnitude.
    State rk4_step(const State& state, double k, const Forcing* forcing = nullptr) const;

    /// n_steps applications of rk4_step; the blow-up error, if raised,
    /// carries the failing step index.
    State evolve(const State& state, double k, int n_steps,
                 const Forcing* forcing = nullptr) const;

private:
    void rhs_into(std::span<const double> eta, std::span<const double> vel, double t,
                  const Forcing* forcing, std::vector<double>& deta,
                  std::vector<double>& dvel) const;

    const SplineSpace* eta_space_;
    const SplineSpace* vel_space_;
    int quad_points_;
    BandedSpdMatrix eta_mass_;
    BandedSpdMatrix vel_mass_;

    // Basis values and first derivatives at all quadrature nodes, cached
    // once per system; stage assembly reduces to short dot products.
    struct QuadNode {
        double x;
        double w;
        int first;  // full-basis index of the first supported function
    };
    std::vector<QuadNode> nodes_;
    std::vector<double> vals_;  // nodes x order, basis values
    std::vector<double> ders_;  // nodes x order, first derivatives
};

/// Sampled snapshot (x, eta_h(x), u_h(x)) as CSV with a '#' metadata
/// preamble.
void write_snapshot_csv(std::ostream& out, const State& state, int samples_per_element = 20,
                        std::span<const std::pair<std::string, std::string>> metadata = {});

}  // namespace swg
