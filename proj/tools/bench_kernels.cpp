#include <benchmark/benchmark.h>

#include <memory>

#include "ans/dynamics.hpp"
#include "ans/field.hpp"
#include "ans/kernels.hpp"
#include "ans/operators.hpp"

using namespace ans;

// Each benchmark runs with range(0) = N and range(1) = 0 (serial reference)
// or 1 (OpenMP backend); the backends are bitwise-equivalent, so the timings
// isolate the worksharing overhead and speedup.

namespace {

void pick_backend(std::int64_t arg) {
    kernels::set_backend(arg ? kernels::Backend::Parallel : kernels::Backend::Serial);
}

SpectralField bench_field(std::shared_ptr<const Grid> g, std::uint64_t seed) {
    const int bandlimit = g->N / 3;
    return make_random_field(std::move(g), bandlimit, 1.0, seed);
}

void grid_args(benchmark::internal::Benchmark* b) {
    b->Args({64, 0})->Args({64, 1})->Args({256, 0})->Args({256, 1});
    b->ArgNames({"N", "omp"});
}

}  // namespace

static void BM_Axpy(benchmark::State& state) {
    pick_backend(state.range(1));
    auto g = make_grid(static_cast<int>(state.range(0)), 6.283185307179586);
    SpectralField y = bench_field(g, 1), x = bench_field(g, 2);
    for (auto _ : state) {
        kernels::axpy(y.data.data(), x.data.data(), y.data.size(), 1e-6);
        benchmark::DoNotOptimize(y.data.data());
    }
}
BENCHMARK(BM_Axpy)->Apply(grid_args);

static void BM_WeightedNormReduction(benchmark::State& state) {
    pick_backend(state.range(1));
    auto g = make_grid(static_cast<int>(state.range(0)), 6.283185307179586);
    SpectralField u = bench_field(g, 3);
    for (auto _ : state) {
        double r = kernels::sum_weighted_mag2(u.comp(0), u.comp(1), g->mu.data(), g->size);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_WeightedNormReduction)->Apply(grid_args);

static void BM_SobolevNorm(benchmark::State& state) {
    pick_backend(state.range(1));
    auto g = make_grid(static_cast<int>(state.range(0)), 6.283185307179586);
    SpectralField u = bench_field(g, 4);
    for (auto _ : state) {
        double r = sobolev_norm(u, 2.0);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SobolevNorm)->Apply(grid_args);

static void BM_NonlinearTerm(benchmark::State& state) {
    pick_backend(state.range(1));
    auto g = make_grid(static_cast<int>(state.range(0)), 6.283185307179586);
    SpectralField u = bench_field(g, 5);
    for (auto _ : state) {
        SpectralField b = nonlinear_term(u);
        benchmark::DoNotOptimize(b.data.data());
    }
}
BENCHMARK(BM_NonlinearTerm)->Apply(grid_args);

static void BM_DeterministicStep(benchmark::State& state) {
    pick_backend(state.range(1));
    SimParams p(make_grid(static_cast<int>(state.range(0)), 6.283185307179586));
    p.f = make_mode_field(p.grid, {{1, 1, 0.5, 0.0}});
    EvolutionSpec spec(p);
    Stepper stepper(spec);
    SpectralField v = bench_field(p.grid, 6);
    double t = 0.0;
    for (auto _ : state) {
        stepper.step(v, t);
        t += p.dt;
        benchmark::DoNotOptimize(v.data.data());
    }
}
BENCHMARK(BM_DeterministicStep)->Apply(grid_args);

BENCHMARK_MAIN();
