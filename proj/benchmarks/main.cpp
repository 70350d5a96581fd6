#include <benchmark/benchmark.h>

#include "gcode/builder.hpp"
#include "gcode/interval_decomp.hpp"
#include "gcode/random_gen.hpp"

namespace {

using namespace gcode;

// One new never-dying generator per height, nested under all earlier ones:
// every batch touches a single column, so compressed output stays linear
// while the uncompressed one grows quadratically.
Presentation nested_family(index n) {
    Presentation p;
    p.m = n;
    p.n = n;
    for (index i = 1; i <= n; ++i)
        p.generators.push_back({n + 1 - i, i});
    return p;
}

void BM_build_nested_compressed(benchmark::State& state) {
    Presentation p = nested_family(static_cast<index>(state.range(0)));
    for (auto _ : state) {
        Graphcode g = build_graphcode(p, BuildMode::compressed);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_build_nested_compressed)->Arg(500)->Arg(1000)->Arg(2000);

void BM_build_nested_uncompressed(benchmark::State& state) {
    Presentation p = nested_family(static_cast<index>(state.range(0)));
    for (auto _ : state) {
        Graphcode g = build_graphcode(p, BuildMode::uncompressed);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_build_nested_uncompressed)->Arg(500)->Arg(1000)->Arg(2000);

void BM_build_random(benchmark::State& state) {
    Rng rng(7);
    std::vector<Presentation> corpus;
    for (int i = 0; i < 64; ++i)
        corpus.push_back(random_presentation(rng, 12, 16, 8, 8));
    std::size_t at = 0;
    for (auto _ : state) {
        Graphcode g = build_graphcode(corpus[at++ % corpus.size()], BuildMode::compressed);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_build_random);

void BM_decide_staircase_sum(benchmark::State& state) {
    Rng rng(11);
    std::vector<EtaSequence> corpus;
    for (int i = 0; i < 64; ++i) {
        StaircaseSum sum = random_staircase_sum(rng, static_cast<index>(state.range(0)),
                                                12, 12);
        scramble_eta(sum.eta, rng, 40);
        corpus.push_back(std::move(sum.eta));
    }
    std::size_t at = 0;
    for (auto _ : state) {
        DecisionResult res = decide_interval_decomposition(corpus[at++ % corpus.size()]);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_decide_staircase_sum)->Arg(6)->Arg(12);

} // namespace

BENCHMARK_MAIN();
