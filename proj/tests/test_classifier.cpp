#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mcst/classifier.hpp"
#include "mcst/encoding.hpp"
#include "mcst/labels.hpp"
#include "test_oracles.hpp"

using namespace mcst;
using classifier::ClassifierConfig;
using classifier::Execution;
using classifier::TrainingSet;
using encoding::FeatureVector;

namespace {

TrainingSet random_training_set(std::size_t m, std::size_t n, int n_classes,
                                std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    TrainingSet t;
    for (std::size_t i = 0; i < m; ++i) {
        FeatureVector x(n);
        for (auto& v : x) v = g(rng);
        t.points.push_back(std::move(x));
        t.labels.push_back(static_cast<int>(rng() % static_cast<std::size_t>(n_classes)));
    }
    // keep every class represented
    for (int c = 0; c < n_classes && static_cast<std::size_t>(c) < m; ++c)
        t.labels[static_cast<std::size_t>(c)] = c;
    return t;
}

}  // namespace

TEST_CASE("prepared state: single branch is a plain tensor product") {
    auto set = labels::tammes_placement(2);
    TrainingSet train;
    train.points = {{3, 4}};
    train.labels = {0};  // label vector (0,0,1) -> label state |0>
    const FeatureVector test = {3, 4};

    auto [state, layout] = classifier::prepare_initial_state(test, train, set);
    CHECK(layout.total_qubits == 4);  // ancilla + 1 + 1 + label, no index qubits

    const auto enc = encoding::amplitude_encode(test);
    oracle::Vec want(16, 0.0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            want[(i << 1) | (j << 2)] = enc[i] * enc[j];
    CHECK(oracle::max_abs_diff(state.amplitudes(), want) < 1e-12);
}

TEST_CASE("prepared state: branch weights and index register") {
    auto set = labels::tammes_placement(2);
    TrainingSet train;
    train.points = {{1, 0}, {0, 1}};
    train.labels = {0, 1};
    auto [state, layout] = classifier::prepare_initial_state({1, 0}, train, set);
    CHECK(layout.index_span.size == 1);

    // Branch m = 1 carries label state |1> (south pole) and amplitude 1/sqrt(2).
    const std::size_t idx = (std::size_t{1} << layout.index_span.start) |
                            (std::size_t{1} << layout.train_span.start) |
                            (std::size_t{1} << layout.label_qubit);
    CHECK(std::abs(state.amplitudes()[idx]) == doctest::Approx(1.0 / std::sqrt(2.0)));

    // Explicit Kronecker oracle for the full state: ancilla|test|train|label|index.
    auto sv_oracle = [&] {
        oracle::Vec acc(32, 0.0);
        const auto t0 = encoding::amplitude_encode(train.points[0]);
        const auto t1 = encoding::amplitude_encode(train.points[1]);
        const auto te = encoding::amplitude_encode({1, 0});
        const double w = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                acc[(i << 1) | (j << 2) | (0u << 3) | (0u << 4)] += w * te[i] * t0[j];
                acc[(i << 1) | (j << 2) | (1u << 3) | (1u << 4)] += w * te[i] * t1[j];
            }
        return acc;
    }();
    CHECK(oracle::max_abs_diff(state.amplitudes(), sv_oracle) < 1e-12);
}

TEST_CASE("prepared state rejections") {
    auto set = labels::tammes_placement(2);
    TrainingSet empty;
    CHECK_THROWS(classifier::prepare_initial_state({1, 0}, empty, set));
    TrainingSet mismatch;
    mismatch.points = {{1, 0, 0}};
    mismatch.labels = {0};
    CHECK_THROWS(classifier::prepare_initial_state({1, 0}, mismatch, set));
}

TEST_CASE("tomography on a single matching training point returns its label vector") {
    for (int cls : {0, 1, 2}) {
        auto set = labels::tammes_placement(3);
        TrainingSet train;
        train.points = {{0.6, 0.8, 0.0}};
        train.labels = {cls};
        ClassifierConfig cfg{.execution = Execution::ExactCircuit};
        const auto y = classifier::run_tomography({0.6, 0.8, 0.0}, train, set, cfg);
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(y.xyz[c] ==
                  doctest::Approx(set.vectors[static_cast<std::size_t>(cls)][c]).epsilon(1e-10));
    }
}

TEST_CASE("orthogonal test point yields the zero vector") {
    auto set = labels::tammes_placement(2);
    TrainingSet train;
    train.points = {{1, 0}};
    train.labels = {0};
    ClassifierConfig cfg{.execution = Execution::ExactCircuit};
    const auto y = classifier::run_tomography({0, 1}, train, set, cfg);
    CHECK(std::abs(y.xyz[0]) < 1e-12);
    CHECK(std::abs(y.xyz[1]) < 1e-12);
    CHECK(std::abs(y.xyz[2]) < 1e-12);
}

TEST_CASE("classical path: hand-summed alphas") {
    auto set = labels::tammes_placement(2);
    TrainingSet train;
    train.points = {{1, 0}, {1, 1}};
    train.labels = {0, 1};
    // kernels: k(x, x0) = 1, k(x, x1) = 0.5; uniform weights 1/2.
    const auto y = classifier::predicted_classical({1, 0}, train, set,
                                                   encoding::linear_kernel);
    REQUIRE(y.alphas.has_value());
    CHECK((*y.alphas)[0] == doctest::Approx(0.5));
    CHECK((*y.alphas)[1] == doctest::Approx(0.25));
    CHECK(y.xyz[2] == doctest::Approx(0.5 - 0.25));
}

TEST_CASE("classical path: all kernels one collapses to the class label vector") {
    auto set = labels::tammes_placement(3);
    TrainingSet train;
    train.points = {{2, 0}, {1, 0}, {5, 0}};
    train.labels = {1, 1, 1};
    const auto y = classifier::predicted_classical({1, 0}, train, set,
                                                   encoding::linear_kernel);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(y.xyz[c] == doctest::Approx(set.vectors[1][c]).epsilon(1e-12));
}

TEST_CASE("oracle equivalence: exact circuit matches the classical kernel sum") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int L = 2 + static_cast<int>(rng() % 3);
        const std::size_t m = 1 + rng() % 8;
        const std::size_t n = 1 + rng() % 4;
        auto set = labels::tammes_placement(L);
        auto train = random_training_set(m, n, L, rng);
        std::normal_distribution<double> g;
        FeatureVector test(n);
        for (auto& v : test) v = g(rng);

        ClassifierConfig cfg{.execution = Execution::ExactCircuit};
        const auto yc = classifier::run_tomography(test, train, set, cfg);
        const auto yk = classifier::predicted_classical(test, train, set,
                                                        encoding::linear_kernel);
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(yc.xyz[c] == doctest::Approx(yk.xyz[c]).epsilon(1e-10));
    }
}

TEST_CASE("classical-path invariants") {
    std::mt19937_64 rng(515);
    for (int trial = 0; trial < 30; ++trial) {
        auto set = labels::tammes_placement(3);
        auto train = random_training_set(5, 3, 3, rng);
        std::normal_distribution<double> g;
        FeatureVector test(3);
        for (auto& v : test) v = g(rng);
        const auto y = classifier::predicted_classical(test, train, set,
                                                       encoding::linear_kernel);
        const double alpha_sum =
            std::accumulate(y.alphas->begin(), y.alphas->end(), 0.0);
        CHECK(y.norm() <= alpha_sum + 1e-12);
        CHECK(alpha_sum <= 1.0 + 1e-12);

        // Permuting training rows leaves y_pred unchanged.
        TrainingSet perm = train;
        std::shuffle(perm.points.begin(), perm.points.end(), rng);
        // shuffle labels with the same permutation: rebuild via indices
        std::vector<std::size_t> order(train.size());
        std::iota(order.begin(), order.end(), 0u);
        std::shuffle(order.begin(), order.end(), rng);
        perm.points.clear();
        perm.labels.clear();
        for (auto i : order) {
            perm.points.push_back(train.points[i]);
            perm.labels.push_back(train.labels[i]);
        }
        const auto yp = classifier::predicted_classical(test, perm, set,
                                                        encoding::linear_kernel);
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(y.xyz[c] == doctest::Approx(yp.xyz[c]).epsilon(1e-12));
    }
}

TEST_CASE("exact depolarization scales the prediction by (1 - p)") {
    std::mt19937_64 rng(77);
    auto set = labels::tammes_placement(4);
    auto train = random_training_set(6, 3, 4, rng);
    const FeatureVector test = {0.3, -0.2, 0.9};
    ClassifierConfig clean{.execution = Execution::ExactCircuit};
    const auto y0 = classifier::run_tomography(test, train, set, clean);
    for (double p : {0.02, 0.1, 0.5, 1.0}) {
        ClassifierConfig noisy = clean;
        noisy.depolarization = p;
        const auto yp = classifier::run_tomography(test, train, set, noisy);
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(yp.xyz[c] == doctest::Approx((1.0 - p) * y0.xyz[c]).epsilon(1e-10));
    }
}

TEST_CASE("sampled mode is seed-reproducible and converges to the exact mode") {
    std::mt19937_64 rng(88);
    auto set = labels::tammes_placement(2);
    auto train = random_training_set(4, 2, 2, rng);
    const FeatureVector test = {0.8, 0.1};

    ClassifierConfig sampled{.execution = Execution::SampledCircuit,
                             .shots = 2000,
                             .seed = 5};
    const auto a = classifier::run_tomography(test, train, set, sampled);
    const auto b = classifier::run_tomography(test, train, set, sampled);
    CHECK(a.xyz == b.xyz);

    ClassifierConfig exact{.execution = Execution::ExactCircuit};
    const auto e = classifier::run_tomography(test, train, set, exact);
    // 2000 shots: component standard error is below ~0.023.
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(std::abs(a.xyz[c] - e.xyz[c]) < 0.1);

    ClassifierConfig zero_shots = sampled;
    zero_shots.shots = 0;
    CHECK_THROWS(classifier::run_tomography(test, train, set, zero_shots));
}

TEST_CASE("classify end to end") {
    auto set = labels::tammes_placement(2);
    TrainingSet train;
    train.points = {{1, 0}, {0, 1}};
    train.labels = {0, 1};
    for (auto mode : {Execution::ExactCircuit, Execution::Classical}) {
        ClassifierConfig cfg{.execution = mode};
        CHECK(classifier::classify({1, 0.1}, train, set, cfg).cls == 0);
        CHECK(classifier::classify({0.1, 1}, train, set, cfg).cls == 1);
    }
}

TEST_CASE("training-set weight validation") {
    TrainingSet t;
    t.points = {{1, 0}, {0, 1}};
    t.labels = {0, 1};
    CHECK(t.effective_weights() == std::vector<double>{0.5, 0.5});
    t.weights = {0.7, 0.2};
    CHECK_THROWS(t.effective_weights());
    t.weights = {0.7, 0.3};
    CHECK(t.effective_weights()[0] == doctest::Approx(0.7));
}
