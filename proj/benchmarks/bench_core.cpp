#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "cheese/construction.hpp"
#include "cheese/geometry.hpp"
#include "cheese/ratfunc.hpp"
#include "cheese/verify.hpp"

namespace {

using cheese::Complex;

std::vector<Complex> ring_points(double radius, int count) {
    std::vector<Complex> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
        pts.push_back(std::polar(radius, 2.0 * M_PI * i / count + 0.37));
    return pts;
}

void BM_RingReciprocal(benchmark::State& state) {
    const long long N = state.range(0);
    const auto pts = ring_points(0.9, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheese::ring_reciprocal(N, pts[i++ & 63]));
    }
}
BENCHMARK(BM_RingReciprocal)->Arg(192)->Arg(1 << 20);

void BM_RingReciprocalLog(benchmark::State& state) {
    const long long N = state.range(0);
    const auto pts = ring_points(0.9, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheese::ring_reciprocal_log(N, pts[i++ & 63]));
    }
}
BENCHMARK(BM_RingReciprocalLog)->Arg(192)->Arg(1 << 20)->Arg(1 << 30);

void BM_LevelFactor(benchmark::State& state) {
    const auto p = cheese::LevelParams::make(int(state.range(0)));
    const auto pts = ring_points(0.9, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheese::level_factor(p, pts[i++ & 63]));
    }
}
BENCHMARK(BM_LevelFactor)->Arg(3)->Arg(8);

void BM_PartialProduct(benchmark::State& state) {
    const auto f = cheese::ProductFunction::make(4, int(state.range(0)));
    const Complex z{0.3, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheese::partial_product(f, z));
    }
}
BENCHMARK(BM_PartialProduct)->Arg(6)->Arg(10);

void BM_BudgetSum(benchmark::State& state) {
    std::vector<cheese::Disc> discs;
    const int n = int(state.range(0));
    discs.reserve(n);
    for (int i = 0; i < n; ++i)
        discs.push_back({std::polar(0.8, 2.0 * M_PI * i / n), 1e-5});
    const cheese::BudgetRef ref = cheese::BoundaryRef{cheese::unit_square()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheese::budget_sum(discs, ref));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BudgetSum)->Range(1 << 10, 1 << 14);

void BM_EnumerateDiscs(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cheese::enumerate_admissible_discs(state.range(0)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnumerateDiscs)->Arg(64)->Arg(512)->Arg(4096);

void BM_IntegrateEdges(benchmark::State& state) {
    const Complex p{0.3, 0.2};
    const auto f = [p](Complex z) { return 1.0 / (z - p); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cheese::integrate_edges(f, cheese::unit_square(), 1e-10));
    }
}
BENCHMARK(BM_IntegrateEdges);

void BM_BuildCheese(benchmark::State& state) {
    cheese::BuildCaps caps;
    caps.n_cap = int(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheese::build_regular_cheese(512.0, 1, caps));
    }
}
BENCHMARK(BM_BuildCheese)->Arg(4)->Arg(5);

} // namespace

BENCHMARK_MAIN();
