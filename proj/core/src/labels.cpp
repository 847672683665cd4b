#include "mcst/labels.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "mcst/rng.hpp"

namespace mcst::labels {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    return {v[0] / n, v[1] / n, v[2] / n};
}

std::vector<Vec3> fixed_placement(int count) {
    switch (count) {
        case 2:
            return {{0, 0, 1}, {0, 0, -1}};
        case 3: {
            const double s = std::sqrt(3.0) / 2.0;
            return {{1, 0, 0}, {-0.5, s, 0}, {-0.5, -s, 0}};
        }
        case 4: {
            // Regular tetrahedron, apex at the north pole.
            const double z = -1.0 / 3.0;
            const double x = std::sqrt(2.0) / 3.0;
            const double y = std::sqrt(2.0 / 3.0);
            return {{0, 0, 1}, {-x, y, z}, {-x, -y, z}, {2.0 * x, 0, z}};
        }
        default:
            return {};
    }
}

double min_angle_excluding(const std::vector<Vec3>& vs, std::size_t skip, const Vec3& repl) {
    double worst = kPi;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const Vec3& a = (i == skip) ? repl : vs[i];
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const Vec3& b = (j == skip) ? repl : vs[j];
            const double c = std::clamp(dot(a, b), -1.0, 1.0);
            worst = std::min(worst, std::acos(c));
        }
    }
    return worst;
}

std::vector<Vec3> optimize_placement(int count, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec3> v(static_cast<std::size_t>(count));
    for (auto& p : v) p = normalized({gauss(rng), gauss(rng), gauss(rng)});

    // Repulsion dynamics: inverse-square pairwise forces with step decay.
    const int iters = 3000;
    for (int it = 0; it < iters; ++it) {
        const double step = 0.03 / (1.0 + 0.005 * it);
        std::vector<Vec3> f(v.size(), {0, 0, 0});
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (i == j) continue;
                Vec3 d = {v[i][0] - v[j][0], v[i][1] - v[j][1], v[i][2] - v[j][2]};
                const double n = std::max(norm(d), 1e-9);
                const double w = 1.0 / (n * n * n);
                f[i][0] += w * d[0];
                f[i][1] += w * d[1];
                f[i][2] += w * d[2];
            }
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = normalized({v[i][0] + step * f[i][0], v[i][1] + step * f[i][1],
                               v[i][2] + step * f[i][2]});
    }

    // Stochastic max-min polish.
    double cur = min_pairwise_angle(v);
    double step = 0.05;
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    for (int it = 0; it < 4000; ++it) {
        const std::size_t i = pick(rng);
        const Vec3 cand = normalized({v[i][0] + step * gauss(rng), v[i][1] + step * gauss(rng),
                                      v[i][2] + step * gauss(rng)});
        const double a = min_angle_excluding(v, i, cand);
        if (a > cur) {
            v[i] = cand;
            cur = a;
        }
        step *= 0.999;
    }
    return v;
}

// Rotate so vs[0] -> (0,0,1) and vs[1] lies in the x-z half-plane, x >= 0.
void canonicalize(std::vector<Vec3>& vs) {
    // Rotation taking vs[0] to the north pole.
    const Vec3 a = vs[0];
    const double theta = std::acos(std::clamp(a[2], -1.0, 1.0));
    const double phi = std::atan2(a[1], a[0]);
    auto rot = [&](const Vec3& p) -> Vec3 {
        // R_y(-theta) * R_z(-phi)
        const double c1 = std::cos(-phi), s1 = std::sin(-phi);
        const Vec3 q = {c1 * p[0] - s1 * p[1], s1 * p[0] + c1 * p[1], p[2]};
        const double c2 = std::cos(-theta), s2 = std::sin(-theta);
        return {c2 * q[0] + s2 * q[2], q[1], -s2 * q[0] + c2 * q[2]};
    };
    for (auto& p : vs) p = rot(p);
    if (vs.size() > 1) {
        const double a2 = std::atan2(vs[1][1], vs[1][0]);
        const double c = std::cos(-a2), s = std::sin(-a2);
        for (auto& p : vs) p = {c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]};
    }
}

}  // namespace

LabelStateParams bloch_angles(const Vec3& v) {
    if (std::abs(norm(v) - 1.0) > 1e-6)
        throw std::invalid_argument("bloch_angles: input must be a unit vector");
    LabelStateParams p;
    p.theta = std::acos(std::clamp(v[2], -1.0, 1.0));
    if (std::abs(v[0]) < 1e-300 && std::abs(v[1]) < 1e-300) {
        p.phi = 0.0;  // pole
    } else {
        p.phi = std::atan2(v[1], v[0]);
        if (p.phi < 0.0) p.phi += 2.0 * kPi;
        if (p.phi >= 2.0 * kPi) p.phi = 0.0;
    }
    return p;
}

double min_pairwise_angle(const std::vector<Vec3>& vs) {
    double worst = kPi;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            worst = std::min(worst, std::acos(std::clamp(dot(vs[i], vs[j]), -1.0, 1.0)));
    return worst;
}

LabelSet tammes_placement(int count, std::uint64_t seed) {
    if (count < 2 || count > 64)
        throw std::invalid_argument("tammes_placement: count must be in [2, 64]");
    std::vector<Vec3> best = fixed_placement(count);
    if (best.empty()) {
        double best_angle = -1.0;
        for (int restart = 0; restart < 6; ++restart) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(count),
                                static_cast<std::uint64_t>(restart)));
            auto cand = optimize_placement(count, rng);
            const double a = min_pairwise_angle(cand);
            if (a > best_angle) {
                best_angle = a;
                best = std::move(cand);
            }
        }
        canonicalize(best);
    }
    LabelSet set;
    set.vectors = std::move(best);
    set.params.reserve(set.vectors.size());
    for (auto& v : set.vectors) {
        v = normalized(v);
        set.params.push_back(bloch_angles(v));
    }
    set.min_pairwise_angle = min_pairwise_angle(set.vectors);
    return set;
}

Assignment assign(const Vec3& y_pred, const LabelSet& labels) {
    if (labels.size() == 0)
        throw std::invalid_argument("assign: empty label set");
    Assignment a;
    if (norm(y_pred) < 1e-12) {
        a.degenerate = true;
        return a;
    }
    double best = dot(labels.vectors[0], y_pred);
    for (std::size_t i = 1; i < labels.size(); ++i) {
        const double d = dot(labels.vectors[i], y_pred);
        if (d > best) {
            best = d;
            a.cls = static_cast<int>(i);
        }
    }
    return a;
}

}  // namespace mcst::labels
