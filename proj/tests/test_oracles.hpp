// Test-only dense linear algebra oracles, independent of the simulator's
// bit-twiddling gate kernels.
#pragma once

#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;
using Mat = std::vector<std::vector<cplx>>;

inline Mat identity(std::size_t n) {
    Mat m(n, std::vector<cplx>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    const std::size_t ra = a.size(), ca = a[0].size();
    const std::size_t rb = b.size(), cb = b[0].size();
    Mat m(ra * rb, std::vector<cplx>(ca * cb, 0.0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < cb; ++l)
                    m[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    return m;
}

inline Vec kron_vec(const Vec& a, const Vec& b) {
    Vec v(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            v[i * b.size() + j] = a[i] * b[j];
    return v;
}

inline Vec matvec(const Mat& m, const Vec& v) {
    Vec out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// Embed a single-qubit gate at `qubit` (qubit 0 = least significant bit) in
// an n-qubit unitary: I x ... x G x ... x I with G at slot `qubit` from the
// right.
inline Mat embed_1q(const Mat& g, int qubit, int n_qubits) {
    Mat m = identity(1);
    for (int q = n_qubits - 1; q >= 0; --q) m = kron(m, q == qubit ? g : identity(2));
    return m;
}

inline Mat pauli_x() { return {{0, 1}, {1, 0}}; }
inline Mat pauli_y() { return {{0, cplx(0, -1)}, {cplx(0, 1), 0}}; }
inline Mat pauli_z() { return {{1, 0}, {0, -1}}; }
inline Mat hadamard() {
    const double s = 0.7071067811865475244;
    return {{s, s}, {s, -s}};
}
inline Mat sdg() { return {{1, 0}, {0, cplx(0, -1)}}; }

inline Vec random_state(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(dim);
    double n2 = 0.0;
    for (auto& a : v) {
        a = cplx(g(rng), g(rng));
        n2 += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(n2);
    return v;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracle
