#include "mcst/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcst::noise {

namespace {
void check_p(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("depolarizing probability must be in [0, 1]");
}
}  // namespace

int sample_kraus_index(double p, Rng& rng) {
    check_p(p);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = u(rng);
    if (r >= 3.0 * p / 4.0) return 0;
    return 1 + static_cast<int>(r / (p / 4.0));
}

void depolarize_label_qubit(qsim::Statevector& state, int qubit, double p,
                            DepolarizeMode mode, Rng& rng) {
    check_p(p);
    if (mode == DepolarizeMode::Exact) return;  // handled at expectation level
    switch (sample_kraus_index(p, rng)) {
        case 0: break;
        case 1: state.apply_x(qubit); break;
        case 2: state.apply_y(qubit); break;
        default: state.apply_z(qubit); break;
    }
}

labels::Vec3 scale_prediction(const labels::Vec3& y_pred, double p) {
    check_p(p);
    return {(1.0 - p) * y_pred[0], (1.0 - p) * y_pred[1], (1.0 - p) * y_pred[2]};
}

double standard_error(double expect, std::uint64_t repetitions) {
    if (repetitions == 0)
        throw std::invalid_argument("standard_error: repetitions must be >= 1");
    const double ps = (expect + 1.0) / 2.0;
    const double v = 4.0 * ps * (1.0 - ps) / static_cast<double>(repetitions);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

Ellipsoid uncertainty_ellipsoid(const labels::Vec3& r, std::uint64_t repetitions) {
    const double x = r[0], y = r[1], z = r[2];
    const double rho2 = x * x + y * y + z * z;
    const double rho = std::sqrt(rho2);
    const double rxy2 = x * x + y * y;
    const double rxy = std::sqrt(rxy2);
    if (rho < 1e-12)
        throw std::invalid_argument("uncertainty_ellipsoid: zero vector");
    if (rxy < 1e-9 * rho)
        throw std::invalid_argument("uncertainty_ellipsoid: pole-degenerate input");

    const double dx = standard_error(x, repetitions);
    const double dy = standard_error(y, repetitions);
    const double dz = standard_error(z, repetitions);

    const double dth_dx = x * z / (rho2 * rxy);
    const double dth_dy = y * z / (rho2 * rxy);
    const double dth_dz = -rxy / rho2;
    const double dph_dx = -y / rxy2;
    const double dph_dy = x / rxy2;

    Ellipsoid e;
    e.delta_theta = std::sqrt(dth_dx * dth_dx * dx * dx + dth_dy * dth_dy * dy * dy +
                              dth_dz * dth_dz * dz * dz);
    e.delta_phi = std::sqrt(dph_dx * dph_dx * dx * dx + dph_dy * dph_dy * dy * dy);
    e.area = std::numbers::pi * e.delta_theta * e.delta_phi;
    return e;
}

CapacityEstimate capacity(const labels::Vec3& r, std::uint64_t repetitions,
                          std::optional<double> p) {
    const Ellipsoid e = uncertainty_ellipsoid(r, repetitions);
    CapacityEstimate c;
    c.r = r;
    c.repetitions = repetitions;
    c.delta_theta = e.delta_theta;
    c.delta_phi = e.delta_phi;
    c.ellipsoid_area = e.area;
    const double rho2 = labels::dot(r, r);
    c.n_states = 4.0 * std::numbers::pi * rho2 / e.area;
    if (p) {
        check_p(*p);
        const labels::Vec3 rs = scale_prediction(r, *p);
        const Ellipsoid es = uncertainty_ellipsoid(rs, repetitions);
        c.noisy_n_states = 4.0 * std::numbers::pi * labels::dot(rs, rs) / es.area;
    }
    return c;
}

double worst_case_factor(double p) {
    check_p(p);
    return 1.0 - 5.0 * p + 6.0 * p * p;
}

}  // namespace mcst::noise
