#include <benchmark/benchmark.h>

#include "gaitauth/model.hpp"
#include "gaitauth/pipeline.hpp"
#include "gaitauth/rng.hpp"
#include "gaitauth/wavelet.hpp"

using namespace gait;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

CohortSession demo_session() {
    CohortConfig cfg;
    cfg.n_subjects = 2;
    cfg.sessions_per_subject = 1;
    cfg.duration_s = 20.0;
    cfg.master_seed = 99;
    return gen_cohort(cfg).sessions.front();
}

void BM_WaveletDenoise(benchmark::State& state) {
    auto x = random_series(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wavelet_denoise(x, 2));
    }
}
BENCHMARK(BM_WaveletDenoise)->Arg(512)->Arg(4096);

void BM_Autocorr(benchmark::State& state) {
    auto x = random_series(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(autocorr(x));
    }
}
BENCHMARK(BM_Autocorr)->Arg(540)->Arg(2048);

void BM_FeatureVector(benchmark::State& state) {
    Rng rng(3);
    GaitPattern p;
    p.segment_bounds.push_back(0);
    for (int u = 0; u < 4; ++u) {
        for (int i = 0; i < 30; ++i) {
            p.z.push_back(rng.normal());
            p.xy.push_back(std::abs(rng.normal()));
            p.m.push_back(std::abs(rng.normal()));
        }
        p.segment_bounds.push_back(p.z.size());
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(feature_vector(p));
    }
}
BENCHMARK(BM_FeatureVector);

void BM_SessionPipeline(benchmark::State& state) {
    auto session = demo_session();
    PipelineConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_session(session.session, session.session_id, config));
    }
}
BENCHMARK(BM_SessionPipeline);

void BM_FitPca(benchmark::State& state) {
    Rng rng(4);
    const auto dim = static_cast<std::size_t>(state.range(0));
    Matrix data;
    for (int i = 0; i < 280; ++i) {
        std::vector<double> row(dim);
        for (auto& v : row) v = rng.normal();
        data.push_back(row);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_pca(data, 0.995));
    }
}
BENCHMARK(BM_FitPca)->Arg(64)->Arg(289)->Unit(benchmark::kMillisecond);

void BM_TrainSvm(benchmark::State& state) {
    Rng rng(5);
    Matrix pos, neg;
    for (int i = 0; i < 14; ++i) {
        std::vector<double> row(42);
        for (auto& v : row) v = rng.normal(1.0, 1.0);
        pos.push_back(row);
    }
    for (int i = 0; i < 126; ++i) {
        std::vector<double> row(42);
        for (auto& v : row) v = rng.normal(-1.0, 1.0);
        neg.push_back(row);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_svm(pos, neg));
    }
}
BENCHMARK(BM_TrainSvm);

}  // namespace

BENCHMARK_MAIN();
