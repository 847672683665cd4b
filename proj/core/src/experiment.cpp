#include "mcst/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mcst/errors.hpp"
#include "mcst/rng.hpp"

namespace mcst::experiment {

using nlohmann::json;

void ExperimentConfig::validate() const {
    if (encoding == encoding::Kind::Angle && mode != classifier::Execution::Classical)
        throw ConfigError("angle encoding requires classical execution");
    if (mode == classifier::Execution::SampledCircuit && shots == 0)
        throw ConfigError("sampled mode requires shots >= 1");
    for (double p : noise)
        if (p < 0.0 || p > 1.0)
            throw ConfigError("noise levels must lie in [0, 1]");
    if (scale && !(scale_hi > scale_lo))
        throw ConfigError("scaling range requires hi > lo");
    if (split == data::SplitKind::KFold && folds < 2)
        throw ConfigError("k-fold split requires folds >= 2");
    if (dataset.source == DatasetSpec::Source::Csv && dataset.csv_path.empty())
        throw ConfigError("csv dataset requires a path");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        kv[section.empty() ? key : section + "." + key] = trim(t.substr(eq + 1));
    }
    return kv;
}

namespace {

double to_double(const std::string& k, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + k + "': not a number: '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& k, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + k + "': not an unsigned integer: '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

ExperimentConfig config_from_file(const std::string& path) {
    auto kv = read_config_file(path);
    ExperimentConfig cfg;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("dataset.source")) {
        if (*v == "generate") cfg.dataset.source = DatasetSpec::Source::Generate;
        else if (*v == "csv") cfg.dataset.source = DatasetSpec::Source::Csv;
        else throw ConfigError("dataset.source must be 'generate' or 'csv', got '" + *v + "'");
    }
    if (auto v = take("dataset.classes"))
        cfg.dataset.xor_spec.n_classes = static_cast<int>(to_u64("dataset.classes", *v));
    if (auto v = take("dataset.features"))
        cfg.dataset.xor_spec.n_features = static_cast<int>(to_u64("dataset.features", *v));
    if (auto v = take("dataset.points_per_class"))
        cfg.dataset.xor_spec.points_per_class =
            static_cast<int>(to_u64("dataset.points_per_class", *v));
    if (auto v = take("dataset.spread"))
        cfg.dataset.xor_spec.spread = to_double("dataset.spread", *v);
    if (auto v = take("dataset.generator_seed"))
        cfg.dataset.xor_spec.seed = to_u64("dataset.generator_seed", *v);
    if (auto v = take("dataset.path")) cfg.dataset.csv_path = *v;
    if (auto v = take("dataset.label_column")) cfg.dataset.label_column = *v;
    if (auto v = take("dataset.feature_columns")) cfg.dataset.feature_columns = split_list(*v);
    if (auto v = take("dataset.balance_per_class"))
        cfg.dataset.balance_per_class = static_cast<int>(to_u64("dataset.balance_per_class", *v));
    if (auto v = take("dataset.balance_seed"))
        cfg.dataset.balance_seed = to_u64("dataset.balance_seed", *v);

    if (auto v = take("encoding.kind")) {
        if (*v == "amplitude") cfg.encoding = encoding::Kind::Amplitude;
        else if (*v == "angle") cfg.encoding = encoding::Kind::Angle;
        else throw ConfigError("encoding.kind must be 'amplitude' or 'angle', got '" + *v + "'");
        cfg.scale = (cfg.encoding == encoding::Kind::Angle);
    }
    if (auto v = take("encoding.scale")) cfg.scale = (*v == "true" || *v == "1");
    if (auto v = take("encoding.scale_lo")) cfg.scale_lo = to_double("encoding.scale_lo", *v);
    if (auto v = take("encoding.scale_hi")) cfg.scale_hi = to_double("encoding.scale_hi", *v);

    if (auto v = take("run.mode")) {
        if (*v == "exact") cfg.mode = classifier::Execution::ExactCircuit;
        else if (*v == "sampled") cfg.mode = classifier::Execution::SampledCircuit;
        else if (*v == "classical") cfg.mode = classifier::Execution::Classical;
        else throw ConfigError("run.mode must be exact|sampled|classical, got '" + *v + "'");
    }
    if (auto v = take("run.shots")) cfg.shots = to_u64("run.shots", *v);
    if (auto v = take("run.noise")) {
        cfg.noise.clear();
        for (const auto& s : split_list(*v)) cfg.noise.push_back(to_double("run.noise", s));
    }
    if (auto v = take("run.split")) {
        if (*v == "loo") cfg.split = data::SplitKind::LeaveOneOut;
        else if (*v == "kfold") cfg.split = data::SplitKind::KFold;
        else throw ConfigError("run.split must be 'loo' or 'kfold', got '" + *v + "'");
    }
    if (auto v = take("run.folds")) cfg.folds = static_cast<int>(to_u64("run.folds", *v));
    if (auto v = take("run.seed")) cfg.seed = to_u64("run.seed", *v);
    if (auto v = take("run.label_seed")) cfg.label_seed = to_u64("run.label_seed", *v);
    if (auto v = take("run.out")) cfg.out_path = *v;

    if (!kv.empty())
        throw ConfigError("unknown config key '" + kv.begin()->first + "' in " + path);
    cfg.validate();
    return cfg;
}

data::Dataset load_dataset(const DatasetSpec& spec) {
    data::Dataset ds;
    if (spec.source == DatasetSpec::Source::Generate) {
        ds = data::generate_xor(spec.xor_spec);
    } else {
        ds = spec.feature_columns.empty()
                 ? data::load_csv(spec.csv_path, spec.label_column)
                 : data::load_csv(spec.csv_path, spec.feature_columns, spec.label_column);
    }
    if (spec.balance_per_class > 0)
        ds = data::balance(ds, spec.balance_per_class, spec.balance_seed);
    return ds;
}

json label_set_json(const labels::LabelSet& set) {
    json j;
    j["count"] = set.size();
    j["min_pairwise_angle"] = set.min_pairwise_angle;
    j["vectors"] = json::array();
    j["params"] = json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        j["vectors"].push_back({set.vectors[i][0], set.vectors[i][1], set.vectors[i][2]});
        j["params"].push_back({{"theta", set.params[i].theta}, {"phi", set.params[i].phi}});
    }
    return j;
}

namespace {

json config_json(const ExperimentConfig& cfg) {
    json d;
    if (cfg.dataset.source == DatasetSpec::Source::Generate) {
        d["source"] = "generate";
        d["classes"] = cfg.dataset.xor_spec.n_classes;
        d["features"] = cfg.dataset.xor_spec.n_features;
        d["points_per_class"] = cfg.dataset.xor_spec.points_per_class;
        d["spread"] = cfg.dataset.xor_spec.spread;
        d["generator_seed"] = cfg.dataset.xor_spec.seed;
    } else {
        d["source"] = "csv";
        d["path"] = cfg.dataset.csv_path;
        d["label_column"] = cfg.dataset.label_column;
        if (!cfg.dataset.feature_columns.empty())
            d["feature_columns"] = cfg.dataset.feature_columns;
    }
    if (cfg.dataset.balance_per_class > 0) {
        d["balance_per_class"] = cfg.dataset.balance_per_class;
        d["balance_seed"] = cfg.dataset.balance_seed;
    }
    json j;
    j["dataset"] = d;
    j["encoding"] = cfg.encoding == encoding::Kind::Amplitude ? "amplitude" : "angle";
    j["scale"] = cfg.scale;
    if (cfg.scale) {
        j["scale_lo"] = cfg.scale_lo;
        j["scale_hi"] = cfg.scale_hi;
    }
    switch (cfg.mode) {
        case classifier::Execution::ExactCircuit: j["mode"] = "exact"; break;
        case classifier::Execution::SampledCircuit: j["mode"] = "sampled"; break;
        case classifier::Execution::Classical: j["mode"] = "classical"; break;
    }
    if (cfg.mode == classifier::Execution::SampledCircuit) j["shots"] = cfg.shots;
    j["noise"] = cfg.noise.empty() ? std::vector<double>{0.0} : cfg.noise;
    j["split"] = cfg.split == data::SplitKind::LeaveOneOut ? "loo" : "kfold";
    if (cfg.split == data::SplitKind::KFold) j["folds"] = cfg.folds;
    j["seed"] = cfg.seed;
    j["label_seed"] = cfg.label_seed;
    return j;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%FT%TZ");
    return ss.str();
}

}  // namespace

json run_experiment(const ExperimentConfig& config) {
    config.validate();
    const data::Dataset ds = load_dataset(config.dataset);
    const labels::LabelSet label_set =
        labels::tammes_placement(ds.n_classes, config.label_seed);
    const data::SplitPlan plan =
        data::make_splits(ds, config.split, config.folds, config.seed);
    const std::vector<double> noise_levels =
        config.noise.empty() ? std::vector<double>{0.0} : config.noise;

    json result;
    result["schema_version"] = 1;
    result["tool_version"] = "0.1.0";
    result["timestamp"] = iso_timestamp();
    result["config"] = config_json(config);
    result["dataset"] = {{"name", ds.name},
                         {"points", ds.size()},
                         {"features", ds.n_features()},
                         {"classes", ds.n_classes},
                         {"label_names", ds.label_names}};
    result["label_set"] = label_set_json(label_set);
    result["runs"] = json::array();

    for (std::size_t pi = 0; pi < noise_levels.size(); ++pi) {
        const double p = noise_levels[pi];
        json records = json::array();
        std::size_t correct = 0;
        double norm_sum = 0.0;

        for (std::size_t fi = 0; fi < plan.folds.size(); ++fi) {
            const auto& fold = plan.folds[fi];
            classifier::TrainingSet train;
            std::vector<encoding::FeatureVector> train_rows;
            train_rows.reserve(fold.train.size());
            for (std::size_t i : fold.train) train_rows.push_back(ds.features[i]);

            std::optional<encoding::MinMaxScaler> scaler;
            if (config.scale) {
                scaler.emplace(config.scale_lo, config.scale_hi);
                scaler->fit(train_rows);
                for (auto& r : train_rows) r = scaler->transform(r);
            }
            train.points = std::move(train_rows);
            for (std::size_t i : fold.train) train.labels.push_back(ds.labels[i]);

            for (std::size_t i : fold.test) {
                encoding::FeatureVector x =
                    scaler ? scaler->transform(ds.features[i]) : ds.features[i];
                classifier::PredictedVector y_pred;
                if (config.mode == classifier::Execution::Classical) {
                    const auto& kernel = config.encoding == encoding::Kind::Amplitude
                                             ? encoding::linear_kernel
                                             : encoding::angle_kernel;
                    y_pred = classifier::predicted_classical(x, train, label_set, kernel);
                    y_pred.xyz = noise::scale_prediction(y_pred.xyz, p);
                } else {
                    classifier::ClassifierConfig cc;
                    cc.execution = config.mode;
                    cc.shots = config.shots;
                    cc.depolarization = p;
                    cc.seed = derive_seed(config.seed, pi, 0, /*purpose=*/21);
                    cc.stream = i;
                    y_pred = classifier::run_tomography(x, train, label_set, cc);
                }
                const labels::Assignment a = labels::assign(y_pred.xyz, label_set);
                json rec;
                rec["index"] = i;
                rec["fold"] = fi;
                rec["true"] = ds.labels[i];
                rec["predicted"] = a.cls;
                rec["y_pred"] = {y_pred.xyz[0], y_pred.xyz[1], y_pred.xyz[2]};
                rec["norm"] = y_pred.norm();
                if (y_pred.alphas) rec["alphas"] = *y_pred.alphas;
                if (a.degenerate) rec["degenerate"] = true;
                records.push_back(std::move(rec));
                if (a.cls == ds.labels[i]) ++correct;
                norm_sum += y_pred.norm();
            }
        }

        json run;
        run["p"] = p;
        run["records"] = std::move(records);
        run["accuracy"] =
            100.0 * static_cast<double>(correct) / static_cast<double>(ds.size());
        run["mean_norm"] = norm_sum / static_cast<double>(ds.size());
        result["runs"].push_back(std::move(run));
    }
    return result;
}

void print_summary(const json& result, std::ostream& os) {
    os << "dataset: " << result["dataset"]["name"].get<std::string>()
       << "  (" << result["dataset"]["points"] << " points, "
       << result["dataset"]["features"] << " features, "
       << result["dataset"]["classes"] << " classes)\n";
    os << std::left << std::setw(22) << "Depolarisation (p)" << std::setw(16)
       << "Accuracy (%)" << "Av. Norm of Predicted Vector\n";
    for (const auto& run : result["runs"]) {
        std::ostringstream acc, nrm;
        acc << std::fixed << std::setprecision(2) << run["accuracy"].get<double>();
        nrm << std::fixed << std::setprecision(4) << run["mean_norm"].get<double>();
        os << std::left << std::setw(22) << run["p"].get<double>() << std::setw(16)
           << acc.str() << nrm.str() << "\n";
    }
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

json capacity_sweep(const labels::Vec3& r, const std::vector<std::uint64_t>& repetition_list,
                    const std::vector<double>& noise_list) {
    if (repetition_list.empty())
        throw ConfigError("capacity sweep: empty repetition list");
    const std::vector<double> ps = noise_list.empty() ? std::vector<double>{0.0} : noise_list;

    json sweep;
    sweep["schema_version"] = 1;
    sweep["r"] = {r[0], r[1], r[2]};
    sweep["rows"] = json::array();
    std::vector<double> xs, ys;
    for (std::uint64_t R : repetition_list) {
        for (double p : ps) {
            const noise::CapacityEstimate c =
                noise::capacity(r, R, p > 0.0 ? std::optional<double>(p) : std::nullopt);
            json row;
            row["R"] = R;
            row["p"] = p;
            row["delta_theta"] = c.delta_theta;
            row["delta_phi"] = c.delta_phi;
            row["ellipsoid_area"] = c.ellipsoid_area;
            row["n_states"] = c.n_states;
            row["noisy_n_states"] = c.noisy_n_states ? json(*c.noisy_n_states) : json(nullptr);
            sweep["rows"].push_back(std::move(row));
        }
        xs.push_back(static_cast<double>(R));
        ys.push_back(noise::capacity(r, R).n_states);
    }
    if (xs.size() >= 2) {
        const LinearFit f = fit_line(xs, ys);
        sweep["linearity_fit"] = {{"slope", f.slope},
                                  {"intercept", f.intercept},
                                  {"r_squared", f.r_squared}};
    }
    return sweep;
}

void write_capacity_csv(const json& sweep, std::ostream& os) {
    os << "r_x,r_y,r_z,R,p,delta_theta,delta_phi,ellipsoid_area,n_states,noisy_n_states\n";
    const auto& r = sweep["r"];
    os << std::setprecision(17);
    for (const auto& row : sweep["rows"]) {
        os << r[0].get<double>() << ',' << r[1].get<double>() << ',' << r[2].get<double>()
           << ',' << row["R"].get<std::uint64_t>() << ',' << row["p"].get<double>() << ','
           << row["delta_theta"].get<double>() << ',' << row["delta_phi"].get<double>() << ','
           << row["ellipsoid_area"].get<double>() << ',' << row["n_states"].get<double>() << ',';
        if (row["noisy_n_states"].is_null())
            os << "";
        else
            os << row["noisy_n_states"].get<double>();
        os << '\n';
    }
}

}  // namespace mcst::experiment
