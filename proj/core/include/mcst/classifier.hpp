#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mcst/encoding.hpp"
#include "mcst/labels.hpp"
#include "mcst/qsim.hpp"

namespace mcst::classifier {

struct TrainingSet {
    std::vector<encoding::FeatureVector> points;
    std::vector<int> labels;       // class indices in [0, L)
    std::vector<double> weights;   // empty means uniform 1/M

    std::size_t size() const { return points.size(); }
    // Uniform weights when none were given; validates sum-to-one otherwise.
    std::vector<double> effective_weights() const;
};

struct PredictedVector {
    labels::Vec3 xyz{};
    std::optional<std::vector<double>> alphas{};  // classical path only

    double norm() const { return labels::norm(xyz); }
};

enum class Execution { ExactCircuit, SampledCircuit, Classical };

struct ClassifierConfig {
    Execution execution = Execution::ExactCircuit;
    std::uint64_t shots = 8192;       // SampledCircuit only
    double depolarization = 0.0;      // label-qubit channel strength p
    std::uint64_t seed = 0;           // root seed for shot sampling
    std::uint64_t stream = 0;         // distinguishes parallel evaluations (e.g. test index)
};

// The full classifier input state: ancilla |0>, test register, per-branch
// train register, label qubit in the class label state, index register |m>,
// branch weight sqrt(w_m). Also returns the layout used.
struct PreparedState {
    qsim::Statevector state;
    qsim::RegisterLayout layout;
};
PreparedState prepare_initial_state(const encoding::FeatureVector& test,
                                    const TrainingSet& train,
                                    const labels::LabelSet& labels);

// Three-basis tomography of the label qubit after the modified SWAP-Test.
// Exact mode reads expectations directly, applying the depolarizing channel
// as the exact (1 - p) scaling; sampled mode draws `shots` outcomes per
// basis with a per-shot Kraus draw on the label qubit before measurement.
PredictedVector run_tomography(const encoding::FeatureVector& test,
                               const TrainingSet& train,
                               const labels::LabelSet& labels,
                               const ClassifierConfig& config);

using Kernel = std::function<double(const encoding::FeatureVector&,
                                    const encoding::FeatureVector&)>;

// Classical oracle path: per-class kernel sums alpha_i, predicted vector
// sum_i alpha_i * y_i.
PredictedVector predicted_classical(const encoding::FeatureVector& test,
                                    const TrainingSet& train,
                                    const labels::LabelSet& labels,
                                    const Kernel& kernel);

// End to end: tomography (or classical path with the linear kernel) followed
// by the assignment function.
labels::Assignment classify(const encoding::FeatureVector& test,
                            const TrainingSet& train,
                            const labels::LabelSet& labels,
                            const ClassifierConfig& config);

}  // namespace mcst::classifier
