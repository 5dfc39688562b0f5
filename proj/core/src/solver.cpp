#include "swg/solver.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "swg/errors.hpp"
#include "swg/quadrature.hpp"

namespace swg {

namespace {
constexpr double kBlowUpThreshold = 1e10;

bool coeffs_ok(std::span<const double> c) {
    for (double v : c) {
        if (!std::isfinite(v) || std::abs(v) > kBlowUpThreshold) return false;
    }
    return true;
}
}  // namespace

FluxPair::FluxPair(const SplineSpace& eta_space, std::span<const double> eta,
                   const SplineSpace& vel_space, std::span<const double> vel)
    : eta_space_(&eta_space), vel_space_(&vel_space), eta_(eta.begin(), eta.end()),
      vel_(vel.begin(), vel.end()) {
    if (eta_space.mesh() != vel_space.mesh())
        throw std::invalid_argument("FluxPair: spaces must share one mesh");
}

double FluxPair::phi(double x) const {
    const double u = vel_space_->eval(vel_, x);
    const double h = eta_space_->eval(eta_, x);
    return u + h * u;
}

double FluxPair::phi_x(double x) const {
    const double u = vel_space_->eval(vel_, x);
    const double ux = vel_space_->eval(vel_, x, 1);
    const double h = eta_space_->eval(eta_, x);
    const double hx = eta_space_->eval(eta_, x, 1);
    return ux + hx * u + h * ux;
}

double FluxPair::f(double x) const {
    const double u = vel_space_->eval(vel_, x);
    const double ux = vel_space_->eval(vel_, x, 1);
    const double hx = eta_space_->eval(eta_, x, 1);
    return hx + u * ux;
}

SwSystem::SwSystem(const SplineSpace& eta_space, const SplineSpace& vel_space, int quad_points)
    : eta_space_(&eta_space), vel_space_(&vel_space),
      quad_points_(quad_points > 0 ? quad_points : default_quad_points(eta_space)),
      eta_mass_(assemble_gram(eta_space, 0, quad_points_)),
      vel_mass_(assemble_gram(vel_space, 0, quad_points_)) {
    if (eta_space.mesh() != vel_space.mesh())
        throw std::invalid_argument("SwSystem: spaces must share one mesh");
    if (eta_space.order() != vel_space.order() ||
        eta_space.smoothness() != vel_space.smoothness())
        throw std::invalid_argument("SwSystem: spaces must have matching order and smoothness");
    if (eta_space.zero_bc() || !vel_space.zero_bc())
        throw std::invalid_argument(
            "SwSystem: elevation space must be unrestricted, velocity space zero-boundary");

    eta_mass_.factorize();
    vel_mass_.factorize();

    const Mesh& mesh = eta_space.mesh();
    const QuadratureRule rule = QuadratureRule::gauss(quad_points_);
    const int r = eta_space.order();
    nodes_.reserve(static_cast<std::size_t>(mesh.num_elements()) * rule.size());
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double mid = 0.5 * (mesh.breakpoint(e) + mesh.breakpoint(e + 1));
        const double hal = 0.5 * mesh.element_length(e);
        for (int q = 0; q < rule.size(); ++q) {
            const double x = mid + hal * rule.points[q];
            const BasisDerivs bd = eta_space.eval_basis_derivs(x, 1);
            nodes_.push_back({x, hal * rule.weights[q], bd.first});
            for (int k = 0; k < r; ++k) {
                vals_.push_back(bd.d[0][k]);
                ders_.push_back(bd.d[1][k]);
            }
        }
    }
}

void SwSystem::rhs_into(std::span<const double> eta, std::span<const double> vel, double t,
                        const Forcing* forcing, std::vector<double>& deta,
                        std::vector<double>& dvel) const {
    const int r = eta_space_->order();
    const int vel_dim = vel_space_->dim();

    std::vector<double> load_eta(eta.size(), 0.0);
    std::vector<double> load_vel(vel.size(), 0.0);

    for (std::size_t n = 0; n < nodes_.size(); ++n) {
        const QuadNode& node = nodes_[n];
        const double* val = &vals_[n * r];
        const double* der = &ders_[n * r];

        double h = 0.0, hx = 0.0, u = 0.0, ux = 0.0;
        for (int k = 0; k < r; ++k) {
            const int ie = node.first + k;
            h += eta[ie] * val[k];
            hx += eta[ie] * der[k];
            const int iv = ie - 1;  // velocity basis drops the first function
            if (iv >= 0 && iv < vel_dim) {
                u += vel[iv] * val[k];
                ux += vel[iv] * der[k];
            }
        }

        const double phi_x = ux + hx * u + h * ux;
        const double fval = hx + u * ux;
        const double ge = forcing ? forcing->g_eta(node.x, t) : 0.0;
        const double gu = forcing ? forcing->g_u(node.x, t) : 0.0;

        const double re = node.w * (ge - phi_x);
        const double ru = node.w * (gu - fval);
        for (int k = 0; k < r; ++k) {
            const int ie = node.first + k;
            load_eta[ie] += re * val[k];
            const int iv = ie - 1;
            if (iv >= 0 && iv < vel_dim) load_vel[iv] += ru * val[k];
        }
    }

    deta = eta_mass_.solve(load_eta);
    dvel = vel_mass_.solve(load_vel);
}

std::pair<std::vector<double>, std::vector<double>> SwSystem::galerkin_rhs(
    std::span<const double> eta, std::span<const double> vel, double t,
    const Forcing* forcing) const {
    if (static_cast<int>(eta.size()) != eta_space_->dim() ||
        static_cast<int>(vel.size()) != vel_space_->dim())
        throw std::invalid_argument("galerkin_rhs: coefficient sizes do not match the spaces");
    std::vector<double> deta, dvel;
    rhs_into(eta, vel, t, forcing, deta, dvel);
    return {std::move(deta), std::move(dvel)};
}

State SwSystem::initial_state(const std::function<double(double)>& eta0,
                              const std::function<double(double)>& u0) const {
    State s;
    s.eta = project(*eta_space_, eta_mass_, eta0, {}, quad_points_);
    s.vel = project(*vel_space_, vel_mass_, u0, {}, quad_points_);
    s.time = 0.0;
    return s;
}

State SwSystem::rk4_step(const State& state, double k, const Forcing* forcing) const {
    if (!(k > 0.0)) throw std::invalid_argument("rk4_step: k must be positive");
    const RkTableau& rk = classical_rk4;
    const double t = state.time;

    const std::vector<double>& e0 = state.eta.coeffs;
    const std::vector<double>& v0 = state.vel.coeffs;
    const std::size_t ne = e0.size(), nv = v0.size();

    std::vector<double> se = e0, sv = v0;          // current stage values
    std::vector<double> acc_e(ne, 0.0), acc_v(nv, 0.0);
    std::vector<double> de, dv;

    for (int j = 0; j < 4; ++j) {
        rhs_into(se, sv, t + rk.c[j] * k, forcing, de, dv);
        for (std::size_t i = 0; i < ne; ++i) acc_e[i] += rk.b[j] * de[i];
        for (std::size_t i = 0; i < nv; ++i) acc_v[i] += rk.b[j] * dv[i];
        if (j < 3) {
            const double ak = rk.a[j] * k;
            for (std::size_t i = 0; i < ne; ++i) se[i] = e0[i] + ak * de[i];
            for (std::size_t i = 0; i < nv; ++i) sv[i] = v0[i] + ak * dv[i];
        }
    }

    State next;
    next.eta.space = eta_space_;
    next.vel.space = vel_space_;
    next.eta.coeffs.resize(ne);
    next.vel.coeffs.resize(nv);
    for (std::size_t i = 0; i < ne; ++i) next.eta.coeffs[i] = e0[i] + k * acc_e[i];
    for (std::size_t i = 0; i < nv; ++i) next.vel.coeffs[i] = v0[i] + k * acc_v[i];
    next.time = t + k;

    if (!coeffs_ok(next.eta.coeffs) || !coeffs_ok(next.vel.coeffs)) {
        throw BlowUpError("rk4_step: coefficients exceeded 1e10 or became non-finite", 0);
    }
    return next;
}

State SwSystem::evolve(const State& state, double k, int n_steps, const Forcing* forcing) const {
    if (n_steps < 0) throw std::invalid_argument("evolve: n_steps must be non-negative");
    State s = state;
    const double t0 = state.time;
    for (int n = 0; n < n_steps; ++n) {
        try {
            s = rk4_step(s, k, forcing);
        } catch (const BlowUpError&) {
            throw BlowUpError("evolve: solution blew up", n + 1);
        }
        s.time = t0 + (n + 1) * k;  // avoid accumulated roundoff in time
    }
    return s;
}

void write_snapshot_csv(std::ostream& out, const State& state, int samples_per_element,
                        std::span<const std::pair<std::string, std::string>> metadata) {
    for (const auto& [key, value] : metadata) {
        out << "# " << key << " = " << value << "\n";
    }
    out << "x,eta,u\n";
    const Mesh& mesh = state.eta.space->mesh();
    const int m = samples_per_element > 0 ? samples_per_element : 20;
    char buf[128];
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double a = mesh.breakpoint(e);
        const double h = mesh.element_length(e);
        const int jend = (e == mesh.num_elements() - 1) ? m : m - 1;
        for (int j = 0; j <= jend; ++j) {
            const double x = (j == m) ? mesh.breakpoint(e + 1) : a + h * j / m;
            std::snprintf(buf, sizeof(buf), "%.17g,%.10e,%.10e\n", x, state.eta.eval(x),
                          state.vel.eval(x));
            out << buf;
        }
    }
}

}  // namespace swg
