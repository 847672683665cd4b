#include <benchmark/benchmark.h>

#include <random>

#include "mcst/classifier.hpp"
#include "mcst/encoding.hpp"
#include "mcst/labels.hpp"
#include "mcst/qsim.hpp"

using namespace mcst;

static void BM_Hadamard(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    qsim::Statevector sv(n);
    for (auto _ : state) {
        sv.apply_h(0);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(std::size_t{1} << n));
}
BENCHMARK(BM_Hadamard)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

static void BM_CSwapRegisters(benchmark::State& state) {
    const std::size_t span = static_cast<std::size_t>(state.range(0));
    qsim::Statevector sv(1 + 2 * span);
    sv.apply_h(0);
    const qsim::QubitSpan a{1, span}, b{1 + span, span};
    for (auto _ : state) {
        sv.apply_cswap_registers(0, a, b);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
}
BENCHMARK(BM_CSwapRegisters)->Arg(2)->Arg(4)->Arg(8);

static void BM_Tomography(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    const auto set = labels::tammes_placement(4);
    classifier::TrainingSet train;
    for (std::size_t i = 0; i < m; ++i) {
        train.points.push_back({g(rng), g(rng), g(rng)});
        train.labels.push_back(static_cast<int>(i % 4));
    }
    const encoding::FeatureVector test = {g(rng), g(rng), g(rng)};
    classifier::ClassifierConfig cfg{.execution = classifier::Execution::ExactCircuit};
    for (auto _ : state) {
        auto y = classifier::run_tomography(test, train, set, cfg);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_Tomography)->Arg(8)->Arg(32)->Arg(63);

static void BM_ClassicalKernelSum(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    const auto set = labels::tammes_placement(4);
    classifier::TrainingSet train;
    for (std::size_t i = 0; i < m; ++i) {
        encoding::FeatureVector x(16);
        for (auto& v : x) v = g(rng);
        train.points.push_back(std::move(x));
        train.labels.push_back(static_cast<int>(i % 4));
    }
    encoding::FeatureVector test(16);
    for (auto& v : test) v = g(rng);
    for (auto _ : state) {
        auto y = classifier::predicted_classical(test, train, set, encoding::linear_kernel);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_ClassicalKernelSum)->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
