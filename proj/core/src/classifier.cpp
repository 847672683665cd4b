#include "mcst/classifier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mcst/noise.hpp"
#include "mcst/rng.hpp"

namespace mcst::classifier {

std::vector<double> TrainingSet::effective_weights() const {
    if (weights.empty())
        return std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size()));
    if (weights.size() != points.size())
        throw std::invalid_argument("training set: weight count mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("training set: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("training set: weights must sum to 1");
    return weights;
}

namespace {

void validate_instance(const encoding::FeatureVector& test, const TrainingSet& train,
                       const labels::LabelSet& labels) {
    if (train.size() == 0)
        throw std::invalid_argument("classifier: empty training set");
    if (train.labels.size() != train.size())
        throw std::invalid_argument("classifier: label count mismatch");
    for (int y : train.labels)
        if (y < 0 || static_cast<std::size_t>(y) >= labels.size())
            throw std::invalid_argument("classifier: class index outside label set");
    for (const auto& p : train.points)
        if (p.size() != test.size())
            throw std::invalid_argument("classifier: feature dimension mismatch");
}

int index_qubits_for(std::size_t m) {
    return m > 1 ? std::bit_width(m - 1) : 0;
}

}  // namespace

PreparedState prepare_initial_state(const encoding::FeatureVector& test,
                                    const TrainingSet& train,
                                    const labels::LabelSet& labels) {
    validate_instance(test, train, labels);
    const auto w = train.effective_weights();
    const int data_qubits = encoding::encoding_qubits(test.size());
    const int idx_qubits = index_qubits_for(train.size());
    const auto layout = qsim::RegisterLayout::standard(data_qubits, idx_qubits);

    const auto test_amps = encoding::amplitude_encode(test);
    qsim::Amplitudes amps(std::size_t{1} << layout.total_qubits, qsim::cplx{0.0, 0.0});

    for (std::size_t m = 0; m < train.size(); ++m) {
        if (w[m] == 0.0) continue;
        const double wm = std::sqrt(w[m]);
        const auto train_amps = encoding::amplitude_encode(train.points[m]);
        const auto& lp = labels.params[static_cast<std::size_t>(train.labels[m])];
        const qsim::cplx label_amp[2] = {
            {std::cos(lp.theta / 2.0), 0.0},
            std::polar(std::sin(lp.theta / 2.0), lp.phi)};
        const std::size_t base = m << layout.index_span.start;
        for (std::size_t i = 0; i < test_amps.size(); ++i) {
            if (test_amps[i] == qsim::cplx{}) continue;
            for (std::size_t j = 0; j < train_amps.size(); ++j) {
                if (train_amps[j] == qsim::cplx{}) continue;
                const qsim::cplx tt = wm * test_amps[i] * train_amps[j];
                const std::size_t idx = base | (i << layout.test_span.start) |
                                        (j << layout.train_span.start);
                amps[idx] += tt * label_amp[0];
                amps[idx | (std::size_t{1} << layout.label_qubit)] += tt * label_amp[1];
            }
        }
    }
    return {qsim::Statevector::from_amplitudes(std::move(amps)), layout};
}

namespace {

// One tomography basis: SWAP-Test, change of basis, CNOT, label-qubit <sigma_z>.
double tomography_expectation(const encoding::FeatureVector& test, const TrainingSet& train,
                              const labels::LabelSet& labels, int basis) {
    auto [state, layout] = prepare_initial_state(test, train, labels);
    state.apply_h(layout.ancilla_qubit);
    state.apply_cswap_registers(layout.ancilla_qubit, layout.test_span, layout.train_span);
    state.apply_h(layout.ancilla_qubit);
    if (basis == 0) {  // x
        state.apply_h(layout.label_qubit);
    } else if (basis == 1) {  // y
        state.apply_sdg(layout.label_qubit);
        state.apply_h(layout.label_qubit);
    }
    state.apply_cnot(layout.ancilla_qubit, layout.label_qubit);
    return state.expectation_z(layout.label_qubit);
}

// Shot-sampled estimate with a per-shot Kraus draw on the label qubit before
// measurement. A Pauli X or Y flips the sign of <sigma_z>; I and Z leave it
// unchanged, so the draw reduces to a sign flip on the shot's expectation.
double sampled_component(double expect, double p, std::uint64_t shots, Rng& rng) {
    if (shots == 0)
        throw std::invalid_argument("run_tomography: shots must be >= 1 in sampled mode");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::int64_t sum = 0;
    for (std::uint64_t k = 0; k < shots; ++k) {
        const int kraus = noise::sample_kraus_index(p, rng);
        const double e = (kraus == 1 || kraus == 2) ? -expect : expect;
        sum += (u(rng) < (e + 1.0) / 2.0) ? 1 : -1;
    }
    return static_cast<double>(sum) / static_cast<double>(shots);
}

}  // namespace

PredictedVector run_tomography(const encoding::FeatureVector& test, const TrainingSet& train,
                               const labels::LabelSet& labels,
                               const ClassifierConfig& config) {
    if (config.depolarization < 0.0 || config.depolarization > 1.0)
        throw std::invalid_argument("run_tomography: depolarization must be in [0, 1]");
    PredictedVector out;
    for (int basis = 0; basis < 3; ++basis) {
        const double e = tomography_expectation(test, train, labels, basis);
        if (config.execution == Execution::SampledCircuit) {
            Rng rng(derive_seed(config.seed, config.stream,
                                static_cast<std::uint64_t>(basis), /*purpose=*/1));
            out.xyz[static_cast<std::size_t>(basis)] =
                sampled_component(e, config.depolarization, config.shots, rng);
        } else {
            out.xyz[static_cast<std::size_t>(basis)] = (1.0 - config.depolarization) * e;
        }
    }
    return out;
}

PredictedVector predicted_classical(const encoding::FeatureVector& test,
                                    const TrainingSet& train,
                                    const labels::LabelSet& labels, const Kernel& kernel) {
    validate_instance(test, train, labels);
    const auto w = train.effective_weights();
    std::vector<double> alphas(labels.size(), 0.0);
    for (std::size_t m = 0; m < train.size(); ++m)
        alphas[static_cast<std::size_t>(train.labels[m])] +=
            w[m] * kernel(test, train.points[m]);
    PredictedVector out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t c = 0; c < 3; ++c)
            out.xyz[c] += alphas[i] * labels.vectors[i][c];
    out.alphas = std::move(alphas);
    return out;
}

labels::Assignment classify(const encoding::FeatureVector& test, const TrainingSet& train,
                            const labels::LabelSet& labels,
                            const ClassifierConfig& config) {
    PredictedVector y_pred;
    if (config.execution == Execution::Classical) {
        y_pred = predicted_classical(test, train, labels, encoding::linear_kernel);
        y_pred.xyz = noise::scale_prediction(y_pred.xyz, config.depolarization);
    } else {
        y_pred = run_tomography(test, train, labels, config);
    }
    return labels::assign(y_pred.xyz, labels);
}

}  // namespace mcst::classifier
