#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcst/encoding.hpp"

namespace mcst::data {

struct Dataset {
    std::string name;
    std::vector<std::string> feature_names;
    std::vector<encoding::FeatureVector> features;
    std::vector<int> labels;
    int n_classes = 0;
    std::vector<std::string> label_names;  // original strings, first-seen order

    std::size_t size() const { return features.size(); }
    std::size_t n_features() const { return features.empty() ? 0 : features.front().size(); }
    void validate() const;  // throws DataError
};

struct XorSpec {
    int n_classes = 4;
    int n_features = 3;
    int points_per_class = 16;
    double spread = 0.12;  // radians of angular Gaussian perturbation
    std::uint64_t seed = 0;
};

// Antipodal-pair XOR family: each class occupies a pair of opposite clusters
// +-u_c on the unit sphere in R^N, with the L direction lines placed by
// max-min optimization and each point perturbed by seeded angular noise.
// Also reports the achieved minimum line angle via `min_pair_separation`.
Dataset generate_xor(const XorSpec& spec);

// Smallest angle between the direction lines underlying a generated XOR set
// (recomputed from the spec, deterministic).
double xor_min_line_angle(const XorSpec& spec);

// UTF-8 CSV with a header row. Features referenced by column name; the label
// column may hold integers or strings (mapped to indices in first-seen order).
Dataset load_csv(const std::string& path, const std::vector<std::string>& feature_columns,
                 const std::string& label_column);
// All non-label columns are features.
Dataset load_csv(const std::string& path, const std::string& label_column = "label");

void save_csv(const Dataset& ds, const std::string& path);

// Uniform without-replacement sample of `per_class` rows from each class.
Dataset balance(const Dataset& ds, int per_class, std::uint64_t seed);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

enum class SplitKind { LeaveOneOut, KFold };

struct SplitPlan {
    SplitKind kind = SplitKind::LeaveOneOut;
    int k = 0;  // KFold only
    std::vector<Fold> folds;
};

// LeaveOneOut: one fold per row. KFold: stratified, seeded, disjoint folds
// whose sizes differ by at most one per class.
SplitPlan make_splits(const Dataset& ds, SplitKind kind, int k = 0, std::uint64_t seed = 0);

}  // namespace mcst::data
