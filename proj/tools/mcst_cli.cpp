// Command-line frontend: generate datasets, run classification experiments,
// and sweep the label-capacity estimate.

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcst/data.hpp"
#include "mcst/errors.hpp"
#include "mcst/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::vector<double>> noise;
    std::optional<std::string> mode;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "Experiment config file (INI sections)");
    cmd->add_option("--seed", f.seed, "Override run seed");
    cmd->add_option("--shots", f.shots, "Override shot count for sampled mode");
    cmd->add_option("--noise", f.noise, "Override depolarization sweep (comma separated)")
        ->delimiter(',');
    cmd->add_option("--mode", f.mode, "Override execution mode: exact|sampled|classical")
        ->check(CLI::IsMember({"exact", "sampled", "classical"}));
    cmd->add_option("--out", f.out_path, "Output path");
}

mcst::experiment::ExperimentConfig build_config(const CommonFlags& f) {
    using mcst::experiment::ExperimentConfig;
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = mcst::experiment::config_from_file(f.config_path);
    if (f.seed) cfg.seed = *f.seed;
    if (f.shots) cfg.shots = *f.shots;
    if (f.noise) cfg.noise = *f.noise;
    if (f.mode) {
        if (*f.mode == "exact") cfg.mode = mcst::classifier::Execution::ExactCircuit;
        else if (*f.mode == "sampled") cfg.mode = mcst::classifier::Execution::SampledCircuit;
        else cfg.mode = mcst::classifier::Execution::Classical;
    }
    if (!f.out_path.empty()) cfg.out_path = f.out_path;
    cfg.validate();
    return cfg;
}

int cmd_generate(const CommonFlags& flags) {
    auto cfg = build_config(flags);
    if (cfg.dataset.source != mcst::experiment::DatasetSpec::Source::Generate)
        throw mcst::ConfigError("generate: config must describe a generated dataset");
    if (cfg.out_path.empty())
        throw mcst::ConfigError("generate: an output path is required (--out or run.out)");
    const auto ds = mcst::data::generate_xor(cfg.dataset.xor_spec);
    mcst::data::save_csv(ds, cfg.out_path);
    const double sep = mcst::data::xor_min_line_angle(cfg.dataset.xor_spec);
    std::cout << "wrote " << cfg.out_path << ": " << ds.size() << " points, "
              << ds.n_features() << " features, " << ds.n_classes
              << " classes, min pair separation " << sep * 180.0 / std::numbers::pi
              << " deg\n";
    return kExitOk;
}

int cmd_experiment(const CommonFlags& flags) {
    auto cfg = build_config(flags);
    const auto result = mcst::experiment::run_experiment(cfg);
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw mcst::DataError("cannot write results to " + cfg.out_path);
        out << result.dump(2) << '\n';
    }
    mcst::experiment::print_summary(result, std::cout);
    return kExitOk;
}

int cmd_capacity(const CommonFlags& flags, const std::vector<double>& r_in,
                 std::vector<std::uint64_t> reps) {
    if (r_in.size() != 3)
        throw mcst::ConfigError("capacity: -r expects three components x,y,z");
    if (reps.empty()) reps = {100, 1000, 10000, 100000};
    const mcst::labels::Vec3 r = {r_in[0], r_in[1], r_in[2]};
    std::vector<double> ps = flags.noise.value_or(std::vector<double>{0.0});
    const auto sweep = mcst::experiment::capacity_sweep(r, reps, ps);
    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path);
        if (!out) throw mcst::DataError("cannot write sweep to " + flags.out_path);
        out << sweep.dump(2) << '\n';
        std::ofstream csv(flags.out_path + ".csv");
        if (!csv) throw mcst::DataError("cannot write sweep to " + flags.out_path + ".csv");
        mcst::experiment::write_capacity_csv(sweep, csv);
    }
    mcst::experiment::write_capacity_csv(sweep, std::cout);
    if (sweep.contains("linearity_fit"))
        std::cout << "linear fit: N_s = " << sweep["linearity_fit"]["slope"].get<double>()
                  << " * R + " << sweep["linearity_fit"]["intercept"].get<double>()
                  << "  (R^2 = " << sweep["linearity_fit"]["r_squared"].get<double>() << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-class SWAP-Test classifier"};
    app.require_subcommand(1);

    CommonFlags gen_flags, exp_flags, cap_flags;
    std::vector<double> cap_r;
    std::vector<std::uint64_t> cap_reps;

    auto* gen = app.add_subcommand("generate", "Generate an XOR dataset and write it as CSV");
    add_common(gen, gen_flags);
    auto* exp = app.add_subcommand("experiment", "Run a cross-validated classification experiment");
    add_common(exp, exp_flags);
    auto* cap = app.add_subcommand("capacity", "Sweep the label-capacity estimate over R and p");
    add_common(cap, cap_flags);
    cap->add_option("-r,--bloch-vector", cap_r, "Measured Bloch vector x,y,z")
        ->delimiter(',')
        ->required();
    cap->add_option("-R,--repetitions", cap_reps, "Repetition counts (comma separated)")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(gen_flags);
        if (exp->parsed()) return cmd_experiment(exp_flags);
        return cmd_capacity(cap_flags, cap_r, cap_reps);
    } catch (const mcst::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const mcst::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
