#pragma once

#include <cstdint>
#include <optional>

#include "mcst/labels.hpp"
#include "mcst/qsim.hpp"

namespace mcst::noise {

enum class DepolarizeMode { Exact, KrausSample };

// Single-qubit depolarizing channel.
// KrausSample draws one Kraus operator (identity with probability 1 - 3p/4,
// each Pauli with probability p/4) and applies it to the state in place.
// Exact leaves the state untouched; exact-mode callers account for the
// channel by scaling Bloch components by (1 - p) at measurement time.
void depolarize_label_qubit(qsim::Statevector& state, int qubit, double p,
                            DepolarizeMode mode, Rng& rng);

// Which Kraus operator a single channel draw selects: 0 = I, 1 = X, 2 = Y, 3 = Z.
int sample_kraus_index(double p, Rng& rng);

// (1 - p) * y_pred: the exact effect of the channel on the predicted vector.
labels::Vec3 scale_prediction(const labels::Vec3& y_pred, double p);

// Standard error of a +-1 observable estimated from R repetitions:
// sqrt(4 * p_s * (1 - p_s) / R) with p_s = (expect + 1) / 2.
double standard_error(double expect, std::uint64_t repetitions);

struct Ellipsoid {
    double delta_theta = 0.0;
    double delta_phi = 0.0;
    double area = 0.0;  // pi * delta_theta * delta_phi
};

// First-order propagation of the per-component standard errors into
// spherical-angle uncertainties at r = (x, y, z). Rejects poles (x = y = 0),
// where delta_phi diverges.
Ellipsoid uncertainty_ellipsoid(const labels::Vec3& r, std::uint64_t repetitions);

struct CapacityEstimate {
    labels::Vec3 r{};
    std::uint64_t repetitions = 0;
    double delta_theta = 0.0;
    double delta_phi = 0.0;
    double ellipsoid_area = 0.0;
    double n_states = 0.0;                   // sphere area / ellipsoid area
    std::optional<double> noisy_n_states{};  // same quantity at (1 - p) * r
};

// Distinguishable-label-state count for a measured Bloch vector r and R
// repetitions; with p present, also the count at the depolarized vector.
CapacityEstimate capacity(const labels::Vec3& r, std::uint64_t repetitions,
                          std::optional<double> p = std::nullopt);

// 1 - 5p + 6p^2: worst-case ratio of noisy to noiseless capacity.
double worst_case_factor(double p);

}  // namespace mcst::noise
