#include <random>

#include <benchmark/benchmark.h>

#include "mateq/constructor.hpp"
#include "mateq/verifier.hpp"

namespace {

using namespace mateq;

MatrixEquation random_equation(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Mat2> coeffs(static_cast<std::size_t>(n));
    for (auto& a : coeffs)
        for (auto& e : a.e) e = {u(rng), u(rng)};
    return MatrixEquation(std::move(coeffs));
}

void BM_FindRoots(benchmark::State& state) {
    const auto backend = state.range(1) == 0 ? RootBackend::Aberth : RootBackend::Companion;
    const Poly det = polymat_det(polymat_from_equation(random_equation(static_cast<int>(state.range(0)), 1)));
    RootOptions opt;
    opt.backend = backend;
    for (auto _ : state) benchmark::DoNotOptimize(find_roots(det, opt));
}
BENCHMARK(BM_FindRoots)->ArgsProduct({{2, 5, 10, 16}, {0, 1}});

void BM_SolveRandom(benchmark::State& state) {
    const auto eq = random_equation(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_equation(eq));
}
BENCHMARK(BM_SolveRandom)->DenseRange(1, 5)->Arg(10)->Arg(16);

void BM_ConstructFull(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(max_solution_count(n));
    for (auto _ : state) benchmark::DoNotOptimize(construct(n, m));
}
BENCHMARK(BM_ConstructFull)->DenseRange(1, 5)->Arg(10)->Arg(16);

void BM_Verify(benchmark::State& state) {
    const auto result = construct(static_cast<int>(state.range(0)), 10);
    for (auto _ : state) benchmark::DoNotOptimize(verify_solution_set(result.equation, result.solutions));
}
BENCHMARK(BM_Verify)->Arg(3)->Arg(5);

void BM_BruteForceScan(benchmark::State& state) {
    const auto eq = random_equation(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_scan(eq));
}
BENCHMARK(BM_BruteForceScan)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
