#include "mcst/qsim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mcst::qsim {

RegisterLayout RegisterLayout::standard(int data_qubits, int index_qubits) {
    RegisterLayout l;
    l.ancilla_qubit = 0;
    l.test_span = {1, data_qubits};
    l.train_span = {1 + data_qubits, data_qubits};
    l.label_qubit = 1 + 2 * data_qubits;
    l.index_span = {2 + 2 * data_qubits, index_qubits};
    l.total_qubits = 2 + 2 * data_qubits + index_qubits;
    l.validate();
    return l;
}

void RegisterLayout::validate() const {
    if (test_span.size != train_span.size)
        throw std::invalid_argument("layout: test and train spans must have equal length");
    if (total_qubits <= 0 || total_qubits > 62)
        throw std::invalid_argument("layout: bad total qubit count");
    std::vector<int> hits(static_cast<std::size_t>(total_qubits), 0);
    auto mark = [&](int q) {
        if (q < 0 || q >= total_qubits)
            throw std::invalid_argument("layout: qubit index out of range");
        ++hits[static_cast<std::size_t>(q)];
    };
    mark(ancilla_qubit);
    mark(label_qubit);
    for (int q = test_span.start; q < test_span.start + test_span.size; ++q) mark(q);
    for (int q = train_span.start; q < train_span.start + train_span.size; ++q) mark(q);
    for (int q = index_span.start; q < index_span.start + index_span.size; ++q) mark(q);
    for (int h : hits)
        if (h != 1) throw std::invalid_argument("layout: spans must be disjoint and cover all qubits");
}

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits <= 0 || num_qubits > 30)
        throw std::invalid_argument("statevector: unsupported qubit count");
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(Amplitudes amps) {
    const std::size_t n = amps.size();
    if (n < 2 || !std::has_single_bit(n))
        throw std::invalid_argument("statevector: amplitude count must be a power of two >= 2");
    Statevector sv;
    sv.num_qubits_ = std::countr_zero(n);
    sv.amps_ = std::move(amps);
    const double nrm = sv.norm();
    if (nrm < 1e-9)
        throw std::invalid_argument("statevector: zero amplitude vector");
    sv.renormalize();
    return sv;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void Statevector::renormalize() {
    const double n = norm();
    for (cplx& a : amps_) a /= n;
}

void Statevector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_)
        throw std::invalid_argument("qubit index out of range");
}

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

void Statevector::apply_h(int qubit) {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | bit];
        amps_[i] = kInvSqrt2 * (a0 + a1);
        amps_[i | bit] = kInvSqrt2 * (a0 - a1);
    }
}

void Statevector::apply_x(int qubit) {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
}

void Statevector::apply_y(int qubit) {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    const cplx im{0.0, 1.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | bit];
        amps_[i] = -im * a1;
        amps_[i | bit] = im * a0;
    }
}

void Statevector::apply_z(int qubit) {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & bit) amps_[i] = -amps_[i];
}

void Statevector::apply_sdg(int qubit) {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    const cplx mi{0.0, -1.0};
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & bit) amps_[i] *= mi;
}

void Statevector::apply_ry(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | bit];
        amps_[i] = c * a0 - s * a1;
        amps_[i | bit] = s * a0 + c * a1;
    }
}

void Statevector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target)
        throw std::invalid_argument("cnot: control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
}

void Statevector::apply_cswap_registers(int control, const QubitSpan& a, const QubitSpan& b) {
    check_qubit(control);
    if (a.size != b.size)
        throw std::invalid_argument("cswap: spans must have equal length");
    if (a.overlaps(b) || a.contains(control) || b.contains(control))
        throw std::invalid_argument("cswap: overlapping operands");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t mask_a = ((std::size_t{1} << a.size) - 1) << a.start;
    const std::size_t mask_b = ((std::size_t{1} << b.size) - 1) << b.start;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & cbit)) continue;
        const std::size_t fa = (i & mask_a) >> a.start;
        const std::size_t fb = (i & mask_b) >> b.start;
        if (fa <= fb) continue;  // visit each pair once; fa == fb is a fixed point
        const std::size_t j = (i & ~(mask_a | mask_b)) | (fb << a.start) | (fa << b.start);
        std::swap(amps_[i], amps_[j]);
    }
}

double Statevector::expectation_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    double e = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        e += (i & bit) ? -std::norm(amps_[i]) : std::norm(amps_[i]);
    return e;
}

double sample_expectation_pm1(double expect, std::uint64_t shots, Rng& rng) {
    if (shots == 0)
        throw std::invalid_argument("sample: shots must be >= 1");
    const double p_plus = (expect + 1.0) / 2.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::int64_t sum = 0;
    for (std::uint64_t k = 0; k < shots; ++k)
        sum += (u(rng) < p_plus) ? 1 : -1;
    return static_cast<double>(sum) / static_cast<double>(shots);
}

double Statevector::sample_z(int qubit, std::uint64_t shots, Rng& rng) const {
    return sample_expectation_pm1(expectation_z(qubit), shots, rng);
}

void apply_gate(Statevector& state, const GateSpec& gate) {
    switch (gate.kind) {
        case GateKind::H: state.apply_h(gate.qubit); break;
        case GateKind::Sdg: state.apply_sdg(gate.qubit); break;
        case GateKind::X: state.apply_x(gate.qubit); break;
        case GateKind::Y: state.apply_y(gate.qubit); break;
        case GateKind::Z: state.apply_z(gate.qubit); break;
        case GateKind::CNOT: state.apply_cnot(gate.qubit, gate.target); break;
        case GateKind::CSwapRegisters:
            state.apply_cswap_registers(gate.qubit, gate.span_a, gate.span_b);
            break;
        case GateKind::Ry: state.apply_ry(gate.qubit, gate.angle); break;
    }
}

}  // namespace mcst::qsim
