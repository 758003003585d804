#include <benchmark/benchmark.h>

#include "fano/grow.hpp"
#include "fano/normal_form.hpp"
#include "fano/polytope.hpp"
#include "fano/seeds.hpp"

using namespace fano;

namespace {

const SeedSet &seeds3()
{
    static SeedSet s = builtin_seeds(3, Mode::Canonical);
    return s;
}

void BM_convex_hull(benchmark::State &state)
{
    std::vector<Point> pts = seeds3().polytopes.back().vertices;
    for (auto _ : state)
        benchmark::DoNotOptimize(convex_hull(pts, 3));
}
BENCHMARK(BM_convex_hull);

void BM_lattice_points(benchmark::State &state)
{
    const Polytope &p =
            seeds3().polytopes[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state)
        benchmark::DoNotOptimize(lattice_points(p));
}
BENCHMARK(BM_lattice_points)->Arg(2)->Arg(10)->Arg(24);

void BM_normal_form(benchmark::State &state)
{
    const Polytope &p =
            seeds3().polytopes[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state)
        benchmark::DoNotOptimize(normal_form(p));
}
BENCHMARK(BM_normal_form)->Arg(0)->Arg(14)->Arg(24);

void BM_candidate_points(benchmark::State &state)
{
    const Polytope &p = seeds3().polytopes.back();
    for (auto _ : state)
        benchmark::DoNotOptimize(
                candidate_points(p, Mode::Canonical, weight_table()));
}
BENCHMARK(BM_candidate_points);

void BM_expand(benchmark::State &state)
{
    const Polytope &p =
            seeds3().polytopes[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state)
        benchmark::DoNotOptimize(expand(p, Mode::Canonical, weight_table()));
}
BENCHMARK(BM_expand)->Arg(0)->Arg(24);

void BM_dual_volume(benchmark::State &state)
{
    const Polytope &p = seeds3().polytopes[10];
    for (auto _ : state)
        benchmark::DoNotOptimize(dual_normalized_volume(p));
}
BENCHMARK(BM_dual_volume);

} // namespace

BENCHMARK_MAIN();
