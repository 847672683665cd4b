#include "mcst/encoding.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mcst/errors.hpp"

namespace mcst::encoding {

namespace {
double l2norm(const FeatureVector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}
}  // namespace

int encoding_qubits(std::size_t n_features) {
    if (n_features == 0) throw std::invalid_argument("encode: empty feature vector");
    std::size_t dim = std::bit_ceil(n_features);
    if (dim < 2) dim = 2;  // a register needs at least one qubit
    return std::countr_zero(dim);
}

qsim::Amplitudes amplitude_encode(const FeatureVector& x) {
    const double n = l2norm(x);
    if (n < 1e-300) throw std::invalid_argument("amplitude_encode: zero vector");
    qsim::Amplitudes amps(std::size_t{1} << encoding_qubits(x.size()), qsim::cplx{0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i) amps[i] = x[i] / n;
    return amps;
}

double linear_kernel(const FeatureVector& x, const FeatureVector& z) {
    if (x.size() != z.size())
        throw std::invalid_argument("linear_kernel: dimension mismatch");
    const double nx = l2norm(x);
    const double nz = l2norm(z);
    if (nx < 1e-300 || nz < 1e-300)
        throw std::invalid_argument("linear_kernel: zero vector");
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * z[i];
    dot /= nx * nz;
    return dot * dot;
}

double angle_kernel(const FeatureVector& x, const FeatureVector& z) {
    if (x.size() != z.size())
        throw std::invalid_argument("angle_kernel: dimension mismatch");
    double k = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = std::cos(x[i] - z[i]);
        k *= c * c;
    }
    return k;
}

MinMaxScaler::MinMaxScaler(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw std::invalid_argument("scaler: require hi > lo");
}

void MinMaxScaler::fit(const std::vector<FeatureVector>& rows) {
    if (rows.empty()) throw DataError("scaler: empty dataset");
    const std::size_t n = rows.front().size();
    min_.assign(n, 0.0);
    max_.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double mn = rows[0][j], mx = rows[0][j];
        for (const auto& r : rows) {
            if (r.size() != n) throw DataError("scaler: ragged rows");
            mn = std::min(mn, r[j]);
            mx = std::max(mx, r[j]);
        }
        min_[j] = mn;
        max_[j] = mx;
    }
}

FeatureVector MinMaxScaler::transform(const FeatureVector& x) const {
    if (x.size() != min_.size())
        throw std::invalid_argument("scaler: dimension mismatch with fitted data");
    FeatureVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double span = max_[j] - min_[j];
        out[j] = span > 0.0 ? lo_ + (x[j] - min_[j]) / span * (hi_ - lo_)
                            : (lo_ + hi_) / 2.0;
    }
    return out;
}

std::vector<FeatureVector> scale_features(const std::vector<FeatureVector>& rows,
                                          double lo, double hi) {
    MinMaxScaler s(lo, hi);
    s.fit(rows);
    std::vector<FeatureVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(s.transform(r));
    return out;
}

}  // namespace mcst::encoding
