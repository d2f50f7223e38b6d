#include <benchmark/benchmark.h>

#include "entsim/channels.hpp"
#include "entsim/hermitian.hpp"
#include "entsim/rng.hpp"
#include "entsim/states.hpp"
#include "entsim/tomography.hpp"

using namespace entsim;

static void BM_HermitianEigensystem(benchmark::State& state) {
    Rng rng(1);
    const DensityOperator rho = random_mixed_qr(rng, 1.0);
    for (auto _ : state) {
        auto es = hermitian_eigensystem(rho.matrix());
        benchmark::DoNotOptimize(es.values.data());
    }
}
BENCHMARK(BM_HermitianEigensystem);

static void BM_DephaseClosedForm(benchmark::State& state) {
    Rng rng(2);
    const DensityOperator rho = random_mixed_qr(rng, 1.0);
    const NoiseStrength p(0.3);
    for (auto _ : state) {
        auto out = dephase_global_closed_form(rho, p);
        benchmark::DoNotOptimize(out.matrix()(0, 0));
    }
}
BENCHMARK(BM_DephaseClosedForm);

static void BM_DephaseKrausSum(benchmark::State& state) {
    Rng rng(2);
    const DensityOperator rho = random_mixed_qr(rng, 1.0);
    const KrausSet ks = dephase_global_kraus(NoiseStrength(0.3));
    for (auto _ : state) {
        auto out = apply_kraus(rho, ks);
        benchmark::DoNotOptimize(out.matrix()(0, 0));
    }
}
BENCHMARK(BM_DephaseKrausSum);

static void BM_ExtractFeatures(benchmark::State& state) {
    Rng rng(3);
    const DensityOperator rho = random_mixed_qr(rng, 1.0);
    for (auto _ : state) {
        auto fv = extract_features(rho);
        benchmark::DoNotOptimize(fv.f.data());
    }
}
BENCHMARK(BM_ExtractFeatures);

static void BM_Concurrence(benchmark::State& state) {
    Rng rng(4);
    const DensityOperator rho = random_mixed_qr(rng, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

static void BM_RandomMixedQr(benchmark::State& state) {
    Rng rng(5);
    for (auto _ : state) {
        auto rho = random_mixed_qr(rng, 1.0);
        benchmark::DoNotOptimize(rho.matrix()(0, 0));
    }
}
BENCHMARK(BM_RandomMixedQr);

BENCHMARK_MAIN();
