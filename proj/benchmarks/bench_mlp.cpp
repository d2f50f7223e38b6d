#include <benchmark/benchmark.h>

#include "entsim/dataset.hpp"
#include "entsim/mlp.hpp"

using namespace entsim;

namespace {

TrainingSet make_set(int n, int dim) {
    Rng rng(9);
    TrainingSet ts;
    ts.n = n;
    ts.dim = dim;
    for (int i = 0; i < n * dim; ++i) ts.x.push_back(rng.uniform(-1, 1));
    for (int i = 0; i < n; ++i) ts.y.push_back(rng.uniform());
    return ts;
}

}  // namespace

static void BM_ForwardSmall(benchmark::State& state) {
    const MlpModel m = init_model({15, 15, 1}, Task::Classify, 1);
    const TrainingSet ts = make_set(1, 15);
    for (auto _ : state) benchmark::DoNotOptimize(forward(m, ts.row(0)));
}
BENCHMARK(BM_ForwardSmall);

static void BM_ForwardRegression(benchmark::State& state) {
    const MlpModel m = init_model({15, 100, 50, 50, 1}, Task::Regress, 1);
    const TrainingSet ts = make_set(1, 15);
    for (auto _ : state) benchmark::DoNotOptimize(forward(m, ts.row(0)));
}
BENCHMARK(BM_ForwardRegression);

static void BM_TrainEpochSmall(benchmark::State& state) {
    const TrainingSet ts = make_set(4096, 15);
    for (auto _ : state) {
        state.PauseTiming();
        MlpModel m = init_model({15, 15, 1}, Task::Regress, 1);
        TrainConfig cfg;
        cfg.epochs = 1;
        cfg.learning_rate = 0.01;
        cfg.seed = 1;
        state.ResumeTiming();
        train(m, ts, cfg);
        benchmark::DoNotOptimize(m.layers[0].w.data());
    }
    state.SetItemsProcessed(state.iterations() * ts.n);
}
BENCHMARK(BM_TrainEpochSmall);

static void BM_TrainEpochRegression(benchmark::State& state) {
    const TrainingSet ts = make_set(4096, 15);
    for (auto _ : state) {
        state.PauseTiming();
        MlpModel m = init_model({15, 100, 50, 50, 1}, Task::Regress, 1);
        TrainConfig cfg;
        cfg.epochs = 1;
        cfg.learning_rate = 0.01;
        cfg.seed = 1;
        state.ResumeTiming();
        train(m, ts, cfg);
        benchmark::DoNotOptimize(m.layers[0].w.data());
    }
    state.SetItemsProcessed(state.iterations() * ts.n);
}
BENCHMARK(BM_TrainEpochRegression);

BENCHMARK_MAIN();
