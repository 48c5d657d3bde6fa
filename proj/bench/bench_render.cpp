// Serial reference renderers against the OpenMP kernels on preset scenes.

#include "expograph/render.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace expograph;

Scene bench_scene(Figure fig, int n)
{
    Scene s = make_preset(fig, n);
    s.viewport.cols = 128;
    s.viewport.rows = 128;
    return s;
}

void BM_BasinsReference(benchmark::State& state)
{
    const Scene scene = bench_scene(Figure::Fig1, static_cast<int>(state.range(0)));
    const RootSet rs = find_all_roots(scene.poly.build());
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::render_basins(scene, rs));
    state.SetItemsProcessed(state.iterations() * 128 * 128);
}

void BM_BasinsParallel(benchmark::State& state)
{
    const Scene scene = bench_scene(Figure::Fig1, static_cast<int>(state.range(0)));
    const RootSet rs = find_all_roots(scene.poly.build());
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(render_basins(scene, rs, workers));
    state.SetItemsProcessed(state.iterations() * 128 * 128);
}

void BM_VoronoiReference(benchmark::State& state)
{
    const Scene scene = bench_scene(Figure::Fig2, static_cast<int>(state.range(0)));
    const RootSet rs = find_all_roots(scene.poly.build());
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::render_voronoi(scene, rs));
    state.SetItemsProcessed(state.iterations() * 128 * 128);
}

void BM_VoronoiParallel(benchmark::State& state)
{
    const Scene scene = bench_scene(Figure::Fig2, static_cast<int>(state.range(0)));
    const RootSet rs = find_all_roots(scene.poly.build());
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(render_voronoi(scene, rs, workers));
    state.SetItemsProcessed(state.iterations() * 128 * 128);
}

} // namespace

BENCHMARK(BM_BasinsReference)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasinsParallel)->Args({3, 1})->Args({3, 4})->Args({7, 1})->Args({7, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VoronoiReference)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VoronoiParallel)->Args({3, 1})->Args({3, 4})->Args({7, 1})->Args({7, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
