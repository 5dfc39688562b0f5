#include <benchmark/benchmark.h>

#include "swg/solver.hpp"
#include "swg/studies.hpp"

namespace {

void Rk4Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const swg::Mesh mesh = swg::Mesh::quasiuniform_a(n);
    const swg::SplineSpace eta_space(mesh, 4, 2, false);
    const swg::SplineSpace vel_space(mesh, 4, 2, true);
    const swg::SwSystem sys(eta_space, vel_space);
    const auto& mms = swg::manufactured_solution(1);
    const swg::State s0 = sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                            [&](double x) { return mms.u(x, 0.0); });
    const double k = 0.05 * mesh.h_max();
    for (auto _ : state) {
        auto s1 = sys.rk4_step(s0, k, &mms.forcing);
        benchmark::DoNotOptimize(s1);
    }
    state.SetComplexityN(n);
}
BENCHMARK(Rk4Step)->RangeMultiplier(2)->Range(40, 640)->Complexity();

void GalerkinRhs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const swg::Mesh mesh = swg::Mesh::uniform(n);
    const swg::SplineSpace eta_space(mesh, 6, 4, false);
    const swg::SplineSpace vel_space(mesh, 6, 4, true);
    const swg::SwSystem sys(eta_space, vel_space);
    const auto& mms = swg::manufactured_solution(2);
    const swg::State s0 = sys.initial_state([&](double x) { return mms.eta(x, 0.0); },
                                            [&](double x) { return mms.u(x, 0.0); });
    for (auto _ : state) {
        auto rhs = sys.galerkin_rhs(s0.eta.coeffs, s0.vel.coeffs, 0.0, &mms.forcing);
        benchmark::DoNotOptimize(rhs);
    }
}
BENCHMARK(GalerkinRhs)->Arg(20)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
