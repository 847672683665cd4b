#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace mcst::labels {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Bloch angles of a label state: theta in [0, pi], phi in [0, 2*pi).
struct LabelStateParams {
    double theta = 0.0;
    double phi = 0.0;
    Vec3 to_vector() const {
        return {std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta),
                std::cos(theta)};
    }
};

// theta = arccos(z), phi = atan2(y, x) mapped to [0, 2*pi); poles get phi = 0.
// Rejects inputs more than 1e-6 away from unit norm.
LabelStateParams bloch_angles(const Vec3& v);

struct LabelSet {
    std::vector<Vec3> vectors;
    std::vector<LabelStateParams> params;
    double min_pairwise_angle = 0.0;  // radians

    std::size_t size() const { return vectors.size(); }
};

// Place L label vectors on the Bloch sphere as far apart as possible.
// L = 2, 3, 4 use the known optimal configurations in a fixed canonical
// orientation; L >= 5 runs a seeded repulsion optimizer with a max-min
// polish, canonicalized so the first vector is (0,0,1) and the second lies
// in the x-z half-plane with x >= 0.
LabelSet tammes_placement(int count, std::uint64_t seed = 0);

// Smallest angle between any two vectors of the set.
double min_pairwise_angle(const std::vector<Vec3>& vs);

struct Assignment {
    int cls = 0;
    bool degenerate = false;  // ||y_pred|| below 1e-12; class defaulted to 0
};

// argmax_i <y_i, y_pred>; ties broken by lowest class index.
Assignment assign(const Vec3& y_pred, const LabelSet& labels);

}  // namespace mcst::labels
