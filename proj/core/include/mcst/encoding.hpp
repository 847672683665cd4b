#pragma once

#include <vector>

#include "mcst/qsim.hpp"

namespace mcst::encoding {

using FeatureVector = std::vector<double>;

enum class Kind { Amplitude, Angle };

// Normalized feature vector zero-padded to the next power of two; amplitudes
// are real. Rejects the zero vector.
qsim::Amplitudes amplitude_encode(const FeatureVector& x);

// Qubits needed to amplitude-encode an N-dimensional feature vector.
int encoding_qubits(std::size_t n_features);

// |<x_hat|z_hat>|^2 with both inputs normalized. Induced by amplitude encoding.
double linear_kernel(const FeatureVector& x, const FeatureVector& z);

// prod_k cos^2(x_k - z_k). Induced by per-feature rotation encoding.
double angle_kernel(const FeatureVector& x, const FeatureVector& z);

// Per-feature affine min-max map onto [lo, hi]. Fit on training rows only,
// then applied to train and test alike. Constant features map to the midpoint.
class MinMaxScaler {
public:
    MinMaxScaler(double lo, double hi);

    void fit(const std::vector<FeatureVector>& rows);
    FeatureVector transform(const FeatureVector& x) const;

    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_;
    double hi_;
    std::vector<double> min_;
    std::vector<double> max_;
};

// Convenience: fit on all rows and transform them in place.
std::vector<FeatureVector> scale_features(const std::vector<FeatureVector>& rows,
                                          double lo, double hi);

}  // namespace mcst::encoding
