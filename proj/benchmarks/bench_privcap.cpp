#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "privcap/allocation.hpp"
#include "privcap/entropy.hpp"
#include "privcap/haar.hpp"
#include "privcap/hermitian_eigen.hpp"
#include "privcap/turbulence.hpp"

using namespace privcap;

static void BM_ThermalEntropy(benchmark::State& state) {
    double x = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(thermal_entropy(x));
        x = x < 1e3 ? x * 1.01 : 1e-6;
    }
}
BENCHMARK(BM_ThermalEntropy);

static void BM_Allocate(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> etas(static_cast<std::size_t>(state.range(0)));
    for (auto& e : etas) e = unit(rng);
    const ModeSpectrum s(etas);
    for (auto _ : state) benchmark::DoNotOptimize(allocate(s, 10.0, BoundKind::Lower));
}
BENCHMARK(BM_Allocate)->Arg(10)->Arg(1000);

static void BM_Jacobi(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix u = haar_unitary(n, std::uint64_t{3});
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<double>(i) / static_cast<double>(n);
    const ComplexMatrix h = u * ComplexMatrix::diagonal(d) * u.adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(h));
}
BENCHMARK(BM_Jacobi)->Arg(8)->Arg(32);

static void BM_Haar(benchmark::State& state) {
    std::mt19937_64 rng(5);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(n, rng));
}
BENCHMARK(BM_Haar)->Arg(4)->Arg(16);

static void BM_MonteCarlo(benchmark::State& state) {
    const EnsembleSpec spec{HaarSubblock{4, 2, 2}, 7};
    for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_lower(spec, 1.0, 1000, {1}));
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
