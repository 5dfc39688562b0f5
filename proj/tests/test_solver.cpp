#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "swg/errors.hpp"
#include "swg/solver.hpp"
#include "swg/studies.hpp"

using namespace swg;

namespace {

constexpr double kPi = std::numbers::pi;

// Galerkin load (g, B_i) for basis function i of the space, by quadrature.
double load_entry(const SplineSpace& sp, int i, const std::function<double(double)>& g,
                  int nq = 10) {
    std::vector<double> e(static_cast<std::size_t>(sp.dim()), 0.0);
    e[i] = 1.0;
    return integrate(sp.mesh(), QuadratureRule::gauss(nq),
                     [&](double x) { return g(x) * sp.eval(e, x); });
}

struct SmallSystem {
    Mesh mesh;
    SplineSpace eta_space;
    SplineSpace vel_space;
    SwSystem sys;

    explicit SmallSystem(int n, int r = 4, int mu = 2)
        : mesh(Mesh::quasiuniform_a(n)), eta_space(mesh, r, mu, false),
          vel_space(mesh, r, mu, true), sys(eta_space, vel_space) {}
};

}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("manufactured solutions satisfy their forcing definitions") {
    // finite-difference cross-check of every closed-form derivative and of
    // g_eta = eta_t + u_x + (eta u)_x, g_u = u_t + eta_x + u u_x
    std::mt19937 gen(11u);
    std::uniform_real_distribution<double> dist(0.05, 0.95);
    const double d = 1e-5;
    for (int id : {1, 2}) {
        const auto& m = manufactured_solution(id);
        for (int trial = 0; trial < 100; ++trial) {
            const double x = dist(gen);
            const double t = dist(gen);
            const double eta_t = (m.eta(x, t + d) - m.eta(x, t - d)) / (2 * d);
            const double eta_x = (m.eta(x + d, t) - m.eta(x - d, t)) / (2 * d);
            const double u_t = (m.u(x, t + d) - m.u(x, t - d)) / (2 * d);
            const double u_x = (m.u(x + d, t) - m.u(x - d, t)) / (2 * d);
            CHECK(m.eta_t(x, t) == doctest::Approx(eta_t).epsilon(1e-8));
            CHECK(m.eta_x(x, t) == doctest::Approx(eta_x).epsilon(1e-8));
            CHECK(m.u_t(x, t) == doctest::Approx(u_t).epsilon(1e-8));
            CHECK(m.u_x(x, t) == doctest::Approx(u_x).epsilon(1e-8));
            const double ge = eta_t + u_x + eta_x * m.u(x, t) + m.eta(x, t) * u_x;
            const double gu = u_t + eta_x + m.u(x, t) * u_x;
            CHECK(std::abs(ge - m.forcing.g_eta(x, t)) <= 1e-6);
            CHECK(std::abs(gu - m.forcing.g_u(x, t)) <= 1e-6);
        }
        // boundary condition of the velocity
        for (double t : {0.0, 0.3, 1.0}) {
            CHECK(std::abs(m.u(0.0, t)) <= 1e-15);
            CHECK(std::abs(m.u(1.0, t)) <= 1e-15);
        }
    }

    const auto& m1 = manufactured_solution(1);
    CHECK(m1.eta(0.0, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(m1.u(0.37, 0.0) == doctest::Approx(std::sin(kPi * 0.37)).epsilon(1e-15));
    // eta_t = 2 eta identically for the first solution
    CHECK(m1.eta_t(0.42, 0.9) == doctest::Approx(2.0 * m1.eta(0.42, 0.9)).epsilon(1e-15));

    // frozen spot value: g_u(0.5, 0) = 1/2 - pi for the second solution
    const auto& m2 = manufactured_solution(2);
    CHECK(m2.forcing.g_u(0.5, 0.0) == doctest::Approx(0.5 - kPi).epsilon(1e-14));

    CHECK_THROWS_AS(manufactured_solution(3), std::invalid_argument);
}

TEST_CASE("flux evaluators") {
    const SmallSystem s(8);
    std::mt19937 gen(3u);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    std::vector<double> eta(static_cast<std::size_t>(s.eta_space.dim()));
    std::vector<double> vel(static_cast<std::size_t>(s.vel_space.dim()));
    for (double& c : eta) c = dist(gen);
    for (double& c : vel) c = dist(gen);
    const std::vector<double> zero_eta(eta.size(), 0.0);
    const std::vector<double> zero_vel(vel.size(), 0.0);

    // U = 0: Phi vanishes, F = H_x
    const FluxPair no_vel(s.eta_space, eta, s.vel_space, zero_vel);
    for (double x : {0.0, 0.21, 0.5, 0.77, 1.0}) {
        CHECK(no_vel.phi(x) == 0.0);
        CHECK(no_vel.phi_x(x) == 0.0);
        CHECK(no_vel.f(x) == doctest::Approx(s.eta_space.eval(eta, x, 1)).epsilon(1e-14));
    }

    // H = 0: Phi = U
    const FluxPair no_eta(s.eta_space, zero_eta, s.vel_space, vel);
    for (double x : {0.1, 0.45, 0.9}) {
        CHECK(no_eta.phi(x) == doctest::Approx(s.vel_space.eval(vel, x)).epsilon(1e-14));
    }

    // both zero: F = 0
    const FluxPair trivial(s.eta_space, zero_eta, s.vel_space, zero_vel);
    CHECK(trivial.f(0.4) == 0.0);

    // H reproducing x exactly, U = 0: F = H_x = 1
    const std::vector<double> linear = s.eta_space.greville_abscissae();
    const FluxPair lin(s.eta_space, linear, s.vel_space, zero_vel);
    for (double x : {0.05, 0.33, 0.68, 0.95}) {
        CHECK(lin.f(x) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("flux loads agree with their expanded forms") {
    // (Phi, B_i) = (U, B_i) + (H U, B_i) and the analogous Phi_x identity,
    // re-quadratured independently on a small space.
    const SmallSystem s(4);
    std::mt19937 gen(17u);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    std::vector<double> eta(static_cast<std::size_t>(s.eta_space.dim()));
    std::vector<double> vel(static_cast<std::size_t>(s.vel_space.dim()));
    for (double& c : eta) c = dist(gen);
    for (double& c : vel) c = dist(gen);
    const FluxPair flux(s.eta_space, eta, s.vel_space, vel);

    auto H = [&](double x) { return s.eta_space.eval(eta, x); };
    auto Hx = [&](double x) { return s.eta_space.eval(eta, x, 1); };
    auto U = [&](double x) { return s.vel_space.eval(vel, x); };
    auto Ux = [&](double x) { return s.vel_space.eval(vel, x, 1); };

    for (int i = 0; i < s.eta_space.dim(); ++i) {
        const double fused = load_entry(s.eta_space, i, [&](double x) { return flux.phi(x); });
        const double expanded = load_entry(s.eta_space, i, U) +
                                load_entry(s.eta_space, i, [&](double x) { return H(x) * U(x); });
        CHECK(fused == doctest::Approx(expanded).epsilon(1e-12));

        const double fused_x =
            load_entry(s.eta_space, i, [&](double x) { return flux.phi_x(x); });
        const double expanded_x =
            load_entry(s.eta_space, i, Ux) +
            load_entry(s.eta_space, i, [&](double x) { return Hx(x) * U(x); }) +
            load_entry(s.eta_space, i, [&](double x) { return H(x) * Ux(x); });
        CHECK(fused_x == doctest::Approx(expanded_x).epsilon(1e-12));
    }
}

TEST_CASE("galerkin right-hand side") {
    const SmallSystem s(16);

    // zero state, no forcing -> zero derivative
    const std::vector<double> ze(static_cast<std::size_t>(s.eta_space.dim()), 0.0);
    const std::vector<double> zv(static_cast<std::size_t>(s.vel_space.dim()), 0.0);
    const auto [de0, dv0] = s.sys.galerkin_rhs(ze, zv, 0.0);
    for (double c : de0) CHECK(std::abs(c) <= 1e-13);
    for (double c : dv0) CHECK(std::abs(c) <= 1e-13);

    // H = 0, U nonzero: the elevation derivative integrates to zero because
    // the flux reduces to U_x and U vanishes at both ends
    const ProjectedFunction u0 =
        project(s.vel_space, [](double x) { return std::sin(kPi * x); });
    const auto [de, dv] = s.sys.galerkin_rhs(ze, u0.coeffs, 0.0);
    const double mean = integrate(s.mesh, QuadratureRule::gauss(8),
                                  [&](double x) { return s.eta_space.eval(de, x); });
    CHECK(std::abs(mean) <= 1e-12);

    CHECK_THROWS_AS(s.sys.galerkin_rhs(ze, ze, 0.0), std::invalid_argument);
}

TEST_CASE("semidiscrete consistency under refinement") {
    // With the state projected from the exact solution at t = 0, the rhs
    // differs from the projected time derivative by the truncation term,
    // which must shrink at order r-1 = 3. Frozen from a refinement oracle:
    // residual(160) ~ 8.40e-7, residual(320) ~ 1.05e-7, ratio ~ 7.99.
    const auto& mms = manufactured_solution(1);
    double res[2];
    int idx = 0;
    for (int n : {160, 320}) {
        const SmallSystem s(n);
        const State s0 = s.sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                             [&](double x) { return mms.u(x, 0.0); });
        auto [deta, dvel] = s.sys.galerkin_rhs(s0.eta.coeffs, s0.vel.coeffs, 0.0, &mms.forcing);
        const ProjectedFunction p_eta_t = project(
            s.eta_space, s.sys.eta_mass(), [&](double x) { return mms.eta_t(x, 0.0); });
        for (std::size_t i = 0; i < deta.size(); ++i) deta[i] -= p_eta_t.coeffs[i];
        res[idx++] = std::sqrt(s.sys.eta_mass().quadratic_form(deta));
    }
    CHECK(res[0] == doctest::Approx(8.40e-7).epsilon(0.05));
    CHECK(res[0] / res[1] == doctest::Approx(8.0).epsilon(0.15));
}

TEST_CASE("rk4 stages follow the classical tableau") {
    const RkTableau& rk = classical_rk4;
    CHECK(rk.a[0] == 0.5);
    CHECK(rk.a[1] == 0.5);
    CHECK(rk.a[2] == 1.0);
    CHECK(rk.b[0] + rk.b[1] + rk.b[2] + rk.b[3] == doctest::Approx(1.0).epsilon(1e-16));

    // scalar surrogate y' = z y: one step must reproduce the degree-4
    // Taylor polynomial of exp(z)
    for (double z : {-1.0, -0.5, 0.1, 0.7, 1.3}) {
        double stage = 1.0;
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double kj = z * stage;
            acc += rk.b[j] * kj;
            if (j < 3) stage = 1.0 + rk.a[j] * kj;
        }
        const double taylor = 1.0 + z + z * z / 2 + z * z * z / 6 + z * z * z * z / 24;
        CHECK(std::abs(1.0 + acc - taylor) <= 1e-15 * std::abs(taylor));
    }
}

TEST_CASE("rk4 step basics") {
    const SmallSystem s(16);

    // zero data, no forcing: stays identically zero
    State zero;
    zero.eta = ProjectedFunction{&s.eta_space,
                                 std::vector<double>(static_cast<std::size_t>(s.eta_space.dim()), 0.0)};
    zero.vel = ProjectedFunction{&s.vel_space,
                                 std::vector<double>(static_cast<std::size_t>(s.vel_space.dim()), 0.0)};
    const State z1 = s.sys.rk4_step(zero, 0.01);
    for (double c : z1.eta.coeffs) CHECK(c == 0.0);
    for (double c : z1.vel.coeffs) CHECK(c == 0.0);
    CHECK(z1.time == doctest::Approx(0.01).epsilon(1e-16));

    // constant elevation, zero velocity: fixed point
    State flat = zero;
    flat.eta.coeffs.assign(flat.eta.coeffs.size(), 1.3);
    const State f1 = s.sys.rk4_step(flat, 0.01);
    for (double c : f1.eta.coeffs) CHECK(std::abs(c - 1.3) <= 1e-13);
    for (double c : f1.vel.coeffs) CHECK(std::abs(c) <= 1e-13);

    CHECK_THROWS_AS(s.sys.rk4_step(zero, 0.0), std::invalid_argument);
}

TEST_CASE("initial projections") {
    const SmallSystem s(16);
    const State c = s.sys.initial_state([](double) { return 2.5; }, [](double) { return 0.0; });
    for (double v : c.eta.coeffs) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));

    // velocity projection converges at order 4 for cubic splines
    double prev = 0.0, o = 0.0;
    for (int n : {16, 32, 64}) {
        const SmallSystem sn(n);
        const State st =
            sn.sys.initial_state([](double) { return 0.0; },
                                 [](double x) { return std::sin(kPi * x); });
        const ErrorNorms en = error_norms(
            st.vel,
            ScalarField{[](double x) { return std::sin(kPi * x); },
                        [](double x) { return kPi * std::cos(kPi * x); }, {}, {}, {}},
            0);
        if (prev > 0.0) o = order(prev, en.l2, 2.0, 1.0);
        prev = en.l2;
    }
    CHECK(std::abs(o - 4.0) <= 0.2);

    // idempotence at the state level
    const auto& mms = manufactured_solution(1);
    const State s0 = s.sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                         [&](double x) { return mms.u(x, 0.0); });
    const State s0b = s.sys.initial_state([&](double x) { return s0.eta.eval(x); },
                                          [&](double x) { return s0.vel.eval(x); });
    for (int i = 0; i < s.eta_space.dim(); ++i)
        CHECK(std::abs(s0.eta.coeffs[i] - s0b.eta.coeffs[i]) <= 1e-12);
}

TEST_CASE("boundary values of the velocity stay exactly zero") {
    const SmallSystem s(16);
    const auto& mms = manufactured_solution(1);
    State st = s.sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                   [&](double x) { return mms.u(x, 0.0); });
    for (int n = 0; n < 10; ++n) {
        st = s.sys.rk4_step(st, 0.002, &mms.forcing);
        CHECK(st.vel.eval(0.0) == 0.0);
        CHECK(st.vel.eval(1.0) == 0.0);
    }
}

TEST_CASE("evolve") {
    const SmallSystem s(16);
    const auto& mms = manufactured_solution(1);
    const State s0 = s.sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                         [&](double x) { return mms.u(x, 0.0); });

    // zero steps: identity
    const State same = s.sys.evolve(s0, 0.01, 0, &mms.forcing);
    CHECK(same.eta.coeffs == s0.eta.coeffs);
    CHECK(same.vel.coeffs == s0.vel.coeffs);

    // determinism: identical runs produce bit-identical coefficients
    const State a = s.sys.evolve(s0, 0.001, 50, &mms.forcing);
    const State b = s.sys.evolve(s0, 0.001, 50, &mms.forcing);
    CHECK(a.eta.coeffs == b.eta.coeffs);
    CHECK(a.vel.coeffs == b.vel.coeffs);
}

TEST_CASE("full run reproduces the reference spatial error at N=160") {
    const SmallSystem s(160);
    const auto& mms = manufactured_solution(1);
    const State s0 = s.sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                         [&](double x) { return mms.u(x, 0.0); });
    const auto [k, m] = TimeSpec{0.05, {}, {}}.resolve(s.mesh.h_max(), 1.0);
    const State sT = s.sys.evolve(s0, k, m, &mms.forcing);
    const ErrorNorms en = error_norms(
        sT.eta,
        ScalarField{[&](double x) { return mms.eta(x, 1.0); },
                    [&](double x) { return mms.eta_x(x, 1.0); }, {}, {}, {}},
        1);
    CHECK(en.l2 == doctest::Approx(1.1057e-6).epsilon(0.02));
    CHECK(en.h1 == doctest::Approx(5.8016e-4).epsilon(0.02));
}

TEST_CASE("reference temporal run reproduces the quintic fine-step error") {
    const Mesh mesh = Mesh::uniform(20);
    const SplineSpace es(mesh, 6, 4, false);
    const SplineSpace vs(mesh, 6, 4, true);
    const SwSystem sys(es, vs);
    const auto& mms = manufactured_solution(2);
    const State s0 = sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                       [&](double x) { return mms.u(x, 0.0); });
    const State ref = sys.evolve(s0, 1.0 / 600, 600, &mms.forcing);
    const ErrorNorms en = error_norms(
        ref.eta,
        ScalarField{[&](double x) { return mms.eta(x, 1.0); },
                    [&](double x) { return mms.eta_x(x, 1.0); }, {}, {}, {}},
        0);
    CHECK(en.l2 == doctest::Approx(2.2956e-9).epsilon(0.02));
}

TEST_CASE("blow-up is detected and located by bisection") {
    const SmallSystem s(160);
    const auto& mms = manufactured_solution(1);
    const State s0 = s.sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                         [&](double x) { return mms.u(x, 0.0); });

    auto survives = [&](double lambda) {
        const auto [k, m] = TimeSpec{lambda, {}, {}}.resolve(s.mesh.h_max(), 1.0);
        try {
            s.sys.evolve(s0, k, m, &mms.forcing);
            return true;
        } catch (const BlowUpError& e) {
            CHECK(e.step() >= 1);
            return false;
        }
    };

    CHECK(survives(0.05));
    CHECK(!survives(2.0));

    // locate the empirical stability boundary between those two
    double lo = 0.05, hi = 2.0;
    for (int iter = 0; iter < 6; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (survives(mid) ? lo : hi) = mid;
    }
    CHECK(lo > 0.05);
    CHECK(hi < 2.0);
    CHECK(hi - lo <= 0.05);
}

TEST_CASE("snapshot export") {
    const SmallSystem s(4);
    State zero;
    zero.eta = ProjectedFunction{&s.eta_space,
                                 std::vector<double>(static_cast<std::size_t>(s.eta_space.dim()), 0.0)};
    zero.vel = ProjectedFunction{&s.vel_space,
                                 std::vector<double>(static_cast<std::size_t>(s.vel_space.dim()), 0.0)};
    std::ostringstream os;
    const std::pair<std::string, std::string> meta[] = {{"case", "zero"}};
    write_snapshot_csv(os, zero, 5, meta);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# case = zero");
    std::getline(is, line);
    CHECK(line == "x,eta,u");
    int rows = 0;
    while (std::getline(is, line)) {
        CHECK(line.find(",0.0000000000e+00,0.0000000000e+00") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 4 * 5 + 1);
}

TEST_SUITE_END();
