#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mcst/rng.hpp"

namespace mcst::qsim {

using cplx = std::complex<double>;
using Amplitudes = std::vector<cplx>;

// Contiguous qubit range [start, start + size).
struct QubitSpan {
    int start = 0;
    int size = 0;
    bool contains(int q) const { return q >= start && q < start + size; }
    bool overlaps(const QubitSpan& o) const {
        return start < o.start + o.size && o.start < start + size;
    }
};

// Bit assignment for the classifier circuits. Qubit 0 is the least
// significant bit of the amplitude index.
struct RegisterLayout {
    int ancilla_qubit = 0;
    QubitSpan test_span;
    QubitSpan train_span;
    int label_qubit = 0;
    QubitSpan index_span;
    int total_qubits = 0;

    // Standard layout: ancilla | test | train | label | index, low to high.
    static RegisterLayout standard(int data_qubits, int index_qubits);

    void validate() const;  // throws std::invalid_argument on overlap/coverage issues
};

// Dense statevector. Gates mutate in place; the owner is responsible for
// copying when an unmodified state is still needed.
class Statevector {
public:
    Statevector() = default;
    explicit Statevector(int num_qubits);  // |0...0>

    static Statevector from_amplitudes(Amplitudes amps);  // renormalizes; rejects zero / non power of two

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const Amplitudes& amplitudes() const { return amps_; }
    Amplitudes& amplitudes() { return amps_; }

    double norm() const;
    void renormalize();

    void apply_h(int qubit);
    void apply_x(int qubit);
    void apply_y(int qubit);
    void apply_z(int qubit);
    void apply_sdg(int qubit);
    void apply_ry(int qubit, double angle);
    void apply_cnot(int control, int target);
    // Per-position controlled swap between two equal-length spans.
    void apply_cswap_registers(int control, const QubitSpan& a, const QubitSpan& b);

    // Exact <sigma_z> on one qubit, no sampling.
    double expectation_z(int qubit) const;

    // Mean of `shots` independent +-1 draws with P(+1) = (<sigma_z> + 1) / 2.
    double sample_z(int qubit, std::uint64_t shots, Rng& rng) const;

private:
    void check_qubit(int qubit) const;

    int num_qubits_ = 0;
    Amplitudes amps_;
};

// Mean of `shots` +-1 draws for a known expectation value; shared by
// sample_z and the shot-sampled tomography path.
double sample_expectation_pm1(double expect, std::uint64_t shots, Rng& rng);

enum class GateKind { H, Sdg, X, Y, Z, CNOT, CSwapRegisters, Ry };

// Data-driven gate description, for callers that assemble circuits as values.
struct GateSpec {
    GateKind kind = GateKind::H;
    int qubit = 0;       // single-qubit gates; control for CNOT / CSwapRegisters
    int target = 0;      // CNOT only
    QubitSpan span_a;    // CSwapRegisters only
    QubitSpan span_b;
    double angle = 0.0;  // Ry only
};

void apply_gate(Statevector& state, const GateSpec& gate);

}  // namespace mcst::qsim
