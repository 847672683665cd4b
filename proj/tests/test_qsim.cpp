#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mcst/qsim.hpp"
#include "test_oracles.hpp"

using namespace mcst;
using qsim::Statevector;

TEST_CASE("init from amplitudes") {
    SUBCASE("basis state") {
        auto sv = Statevector::from_amplitudes({1, 0, 0, 0});
        CHECK(sv.num_qubits() == 2);
        CHECK(sv.amplitudes()[0] == qsim::cplx{1.0, 0.0});
    }
    SUBCASE("renormalized on entry") {
        auto sv = Statevector::from_amplitudes({1, 1, 0, 0});
        CHECK(sv.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sv.amplitudes()[0].real() == doctest::Approx(0.7071067811865475));
        CHECK(sv.amplitudes()[1].real() == doctest::Approx(0.7071067811865475));
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS(Statevector::from_amplitudes({1, 0, 0}));
        CHECK_THROWS(Statevector::from_amplitudes({0, 0, 0, 0}));
    }
}

TEST_CASE("single-qubit gates match the dense matrix oracle") {
    std::mt19937_64 rng(7);
    const int n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        auto amps = oracle::random_state(1u << n, rng);
        const int q = static_cast<int>(rng() % n);
        struct Case {
            oracle::Mat m;
            void (Statevector::*apply)(int);
        };
        const Case cases[] = {
            {oracle::hadamard(), &Statevector::apply_h},
            {oracle::pauli_x(), &Statevector::apply_x},
            {oracle::pauli_y(), &Statevector::apply_y},
            {oracle::pauli_z(), &Statevector::apply_z},
            {oracle::sdg(), &Statevector::apply_sdg},
        };
        for (const auto& c : cases) {
            auto sv = Statevector::from_amplitudes(amps);
            (sv.*c.apply)(q);
            const auto want = oracle::matvec(oracle::embed_1q(c.m, q, n), amps);
            CHECK(oracle::max_abs_diff(sv.amplitudes(), want) < 1e-12);
        }
    }
}

TEST_CASE("hadamard on |0>") {
    Statevector sv(1);
    sv.apply_h(0);
    CHECK(sv.amplitudes()[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(sv.amplitudes()[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("cswap on registers") {
    // |1>|a>|b> -> |1>|b>|a> with control set, unchanged with control clear.
    // Layout: control = qubit 0, span a = {1,2}, span b = {3,2}.
    std::mt19937_64 rng(3);
    auto a = oracle::random_state(4, rng);
    auto b = oracle::random_state(4, rng);
    for (int ctrl : {0, 1}) {
        qsim::Amplitudes amps(32, 0.0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                amps[static_cast<std::size_t>(ctrl) | (i << 1) | (j << 3)] = a[i] * b[j];
        auto sv = Statevector::from_amplitudes(amps);
        sv.apply_cswap_registers(0, {1, 2}, {3, 2});
        qsim::Amplitudes want(32, 0.0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const auto val = ctrl ? b[i] * a[j] : a[i] * b[j];
                want[static_cast<std::size_t>(ctrl) | (i << 1) | (j << 3)] = val;
            }
        CHECK(oracle::max_abs_diff(sv.amplitudes(), want) < 1e-12);
    }
}

TEST_CASE("swap-test identity: ancilla <sigma_z> equals |<a|b>|^2") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = oracle::random_state(4, rng);
        auto b = oracle::random_state(4, rng);
        qsim::Amplitudes amps(32, 0.0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) amps[(i << 1) | (j << 3)] = a[i] * b[j];
        auto sv = Statevector::from_amplitudes(amps);
        sv.apply_h(0);
        sv.apply_cswap_registers(0, {1, 2}, {3, 2});
        sv.apply_h(0);
        oracle::cplx ov = 0.0;
        for (std::size_t i = 0; i < 4; ++i) ov += std::conj(a[i]) * b[i];
        CHECK(sv.expectation_z(0) == doctest::Approx(std::norm(ov)).epsilon(1e-12));
    }
}

TEST_CASE("norm preservation and involutions on random states") {
    std::mt19937_64 rng(23);
    auto amps = oracle::random_state(16, rng);
    auto sv = Statevector::from_amplitudes(amps);

    sv.apply_h(2);
    sv.apply_cnot(0, 3);
    sv.apply_ry(1, 0.7);
    CHECK(std::abs(sv.norm() - 1.0) < 1e-12);

    // X, Y, Z, H, CNOT are involutions; Sdg has order 4.
    sv = Statevector::from_amplitudes(amps);
    sv.apply_x(1); sv.apply_x(1);
    sv.apply_y(2); sv.apply_y(2);
    sv.apply_z(3); sv.apply_z(3);
    sv.apply_h(0); sv.apply_h(0);
    sv.apply_cnot(1, 2); sv.apply_cnot(1, 2);
    sv.apply_sdg(0); sv.apply_sdg(0); sv.apply_sdg(0); sv.apply_sdg(0);
    CHECK(oracle::max_abs_diff(sv.amplitudes(), amps) < 1e-12);
}

TEST_CASE("expectation_z") {
    Statevector sv(2);
    CHECK(sv.expectation_z(0) == doctest::Approx(1.0));
    sv.apply_h(0);
    CHECK(sv.expectation_z(0) == doctest::Approx(0.0));
    sv.apply_x(1);
    CHECK(sv.expectation_z(1) == doctest::Approx(-1.0));
}

TEST_CASE("sample_z") {
    SUBCASE("degenerate distribution is exact") {
        Statevector sv(1);
        Rng rng(5);
        CHECK(sv.sample_z(0, 100, rng) == doctest::Approx(1.0));
    }
    SUBCASE("seed-fixed reproducibility") {
        Statevector sv(1);
        sv.apply_h(0);
        Rng r1(99), r2(99);
        CHECK(sv.sample_z(0, 1000, r1) == sv.sample_z(0, 1000, r2));
    }
    SUBCASE("zero shots rejected") {
        Statevector sv(1);
        Rng rng(5);
        CHECK_THROWS(sv.sample_z(0, 0, rng));
    }
    SUBCASE("estimator mean within 3 standard errors over 1000 seeds") {
        Statevector sv(1);
        sv.apply_ry(0, 0.9);
        const double expect = sv.expectation_z(0);
        const std::uint64_t shots = 200;
        double mean = 0.0;
        const int n_seeds = 1000;
        for (int s = 0; s < n_seeds; ++s) {
            Rng rng(static_cast<std::uint64_t>(s));
            mean += sv.sample_z(0, shots, rng);
        }
        mean /= n_seeds;
        const double se = std::sqrt((1.0 - expect * expect) / static_cast<double>(shots)) /
                          std::sqrt(static_cast<double>(n_seeds));
        CHECK(std::abs(mean - expect) < 3.0 * se);
    }
    SUBCASE("empirical std-error tracks sqrt(4 p (1-p) / R)") {
        Statevector sv(1);
        sv.apply_ry(0, 1.1);
        const double expect = sv.expectation_z(0);
        const std::uint64_t shots = 400;
        const int n_seeds = 2000;
        double m = 0.0, m2 = 0.0;
        for (int s = 0; s < n_seeds; ++s) {
            Rng rng(static_cast<std::uint64_t>(1000 + s));
            const double e = sv.sample_z(0, shots, rng);
            m += e;
            m2 += e * e;
        }
        m /= n_seeds;
        const double sd = std::sqrt(m2 / n_seeds - m * m);
        const double ps = (expect + 1.0) / 2.0;
        const double want = std::sqrt(4.0 * ps * (1.0 - ps) / static_cast<double>(shots));
        CHECK(sd == doctest::Approx(want).epsilon(0.1));
    }
}

TEST_CASE("layout validation") {
    auto good = qsim::RegisterLayout::standard(2, 3);
    CHECK(good.total_qubits == 9);
    CHECK(good.label_qubit == 5);

    qsim::RegisterLayout bad = good;
    bad.train_span = bad.test_span;  // overlap
    CHECK_THROWS(bad.validate());
}

TEST_CASE("gate spec dispatch") {
    std::mt19937_64 rng(41);
    auto amps = oracle::random_state(8, rng);
    auto a = Statevector::from_amplitudes(amps);
    auto b = Statevector::from_amplitudes(amps);
    qsim::apply_gate(a, {.kind = qsim::GateKind::CNOT, .qubit = 0, .target = 2});
    b.apply_cnot(0, 2);
    CHECK(oracle::max_abs_diff(a.amplitudes(), b.amplitudes()) == 0.0);
    CHECK_THROWS(qsim::apply_gate(a, {.kind = qsim::GateKind::CNOT, .qubit = 1, .target = 1}));
}
