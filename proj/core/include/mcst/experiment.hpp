#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mcst/classifier.hpp"
#include "mcst/data.hpp"
#include "mcst/labels.hpp"
#include "mcst/noise.hpp"

#include <json.hpp>

namespace mcst::experiment {

struct DatasetSpec {
    enum class Source { Generate, Csv };
    Source source = Source::Generate;
    data::XorSpec xor_spec;  // Generate
    std::string csv_path;    // Csv
    std::string label_column = "label";
    std::vector<std::string> feature_columns;  // empty = all non-label columns
    int balance_per_class = 0;                 // 0 = keep all rows
    std::uint64_t balance_seed = 0;
};

struct ExperimentConfig {
    DatasetSpec dataset;
    encoding::Kind encoding = encoding::Kind::Amplitude;
    bool scale = false;  // min-max scaling, fitted per training fold
    double scale_lo = 0.0;
    double scale_hi = std::numbers::pi / 2.0;
    classifier::Execution mode = classifier::Execution::Classical;
    std::uint64_t shots = 8192;
    std::vector<double> noise;  // p sweep; empty = single run at p = 0
    data::SplitKind split = data::SplitKind::KFold;
    int folds = 5;
    std::uint64_t seed = 0;
    std::uint64_t label_seed = 0;
    std::string out_path;

    void validate() const;  // throws ConfigError
};

// Flat "section.key" -> value view of an INI-style config file
// (# comments, [section] headers, key = value lines).
std::map<std::string, std::string> read_config_file(const std::string& path);

// Builds a config from a parsed file; unknown keys are rejected.
ExperimentConfig config_from_file(const std::string& path);

// Materialize the dataset a config describes (generation or CSV + balancing).
data::Dataset load_dataset(const DatasetSpec& spec);

// Runs the cross-validation loop for every p in the sweep and assembles the
// self-describing result document (schema_version, config echo, label set,
// per-point records, per-p aggregates).
nlohmann::json run_experiment(const ExperimentConfig& config);

// Accuracy table mirroring the result document, one row per noise level.
void print_summary(const nlohmann::json& result, std::ostream& os);

// CapacityEstimate rows over the R x p grid plus the linearity fit of
// N_s against R at p = 0.
nlohmann::json capacity_sweep(const labels::Vec3& r,
                              const std::vector<std::uint64_t>& repetition_list,
                              const std::vector<double>& noise_list);

void write_capacity_csv(const nlohmann::json& sweep, std::ostream& os);

nlohmann::json label_set_json(const labels::LabelSet& set);

// Least-squares y = a + b x.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mcst::experiment
