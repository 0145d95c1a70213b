#include <benchmark/benchmark.h>

#include "citemetric/baseline.hpp"
#include "citemetric/indicators.hpp"
#include "citemetric/stats.hpp"
#include "citemetric/synth.hpp"
#include "citemetric/window.hpp"

using namespace citemetric;

namespace {

Corpus bench_corpus(int researchers) {
    GeneratorSpec spec;
    spec.seed = 12;
    spec.n_fields = 6;
    spec.n_journals = 12;
    spec.n_researchers = researchers;
    spec.pubs_per_researcher = 30;
    spec.year_start = 1997;
    spec.year_end = 2006;
    spec.recent_spike = RecentSpike{3, 5};
    return generate(spec);
}

ScoringConfig bench_config() {
    ScoringConfig config;
    config.window_end = 2006;
    config.min_pubs = 1;
    return config;
}

}  // namespace

static void BM_BuildBaselines(benchmark::State& state) {
    const Corpus corpus = bench_corpus(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_baselines(corpus, BaselineMode::field, WindowSpec{2006}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_BuildBaselines)->Arg(50)->Arg(200);

static void BM_ScoreCohort(benchmark::State& state) {
    const Corpus corpus = bench_corpus(200);
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    const ScoringConfig config = bench_config();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(score_cohort(corpus, table, config, threads));
    }
    state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_ScoreCohort)->Arg(1)->Arg(4);

static void BM_BootstrapCi(benchmark::State& state) {
    const Corpus corpus = bench_corpus(1);
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    const auto score =
        score_oeuvre("r0001", corpus.oeuvre("r0001"), table, WindowSpec{2006}, bench_config());
    const int resamples = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bootstrap_ci(score.scored, Indicator::mncs, resamples, 0.95, 42));
    }
    state.SetItemsProcessed(state.iterations() * resamples);
}
BENCHMARK(BM_BootstrapCi)->Arg(1000)->Arg(10000);

static void BM_WindowSweep(benchmark::State& state) {
    const Corpus corpus = bench_corpus(100);
    const ScoringConfig config = bench_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            window_sweep(corpus, {WindowSpec{2006}, WindowSpec{2008}}, 0.5, config, 4));
    }
}
BENCHMARK(BM_WindowSweep);

BENCHMARK_MAIN();
