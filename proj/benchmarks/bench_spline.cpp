#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "swg/nonsmooth.hpp"
#include "swg/projection.hpp"
#include "swg/spline.hpp"

namespace {

void BasisDerivEval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const swg::SplineSpace space(swg::Mesh::quasiuniform_a(n), 4, 2);
    std::mt19937 gen(1u);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> xs(1024);
    for (double& x : xs) x = dist(gen);
    std::size_t i = 0;
    for (auto _ : state) {
        auto b = space.eval_basis_derivs(xs[i++ & 1023], 1);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BasisDerivEval)->Arg(64)->Arg(1024);

void MassAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const swg::SplineSpace space(swg::Mesh::uniform(n), 4, 2);
    for (auto _ : state) {
        auto m = swg::assemble_gram(space, 0);
        benchmark::DoNotOptimize(m);
    }
    state.SetComplexityN(n);
}
BENCHMARK(MassAssembly)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void ProjectNonsmooth(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const swg::SplineSpace space(swg::Mesh::uniform(n), 4, 2);
    const swg::NonSmoothV v;
    const auto field = v.as_field();
    for (auto _ : state) {
        auto pf = swg::project(space, field.f, field.breaks);
        benchmark::DoNotOptimize(pf);
    }
}
BENCHMARK(ProjectNonsmooth)->Arg(1025);

}  // namespace
