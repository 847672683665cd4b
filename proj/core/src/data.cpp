#include "mcst/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mcst/errors.hpp"
#include "mcst/rng.hpp"

namespace mcst::data {

void Dataset::validate() const {
    if (features.empty()) throw DataError("dataset '" + name + "' is empty");
    if (labels.size() != features.size())
        throw DataError("dataset '" + name + "': label count mismatch");
    const std::size_t n = features.front().size();
    std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != n)
            throw DataError("dataset '" + name + "': ragged feature rows");
        for (double v : features[i])
            if (!std::isfinite(v))
                throw DataError("dataset '" + name + "': non-finite feature at row " +
                                std::to_string(i));
        if (labels[i] < 0 || labels[i] >= n_classes)
            throw DataError("dataset '" + name + "': label out of range at row " +
                            std::to_string(i));
        ++counts[static_cast<std::size_t>(labels[i])];
    }
    for (int c = 0; c < n_classes; ++c)
        if (counts[static_cast<std::size_t>(c)] == 0)
            throw DataError("dataset '" + name + "': class " + std::to_string(c) + " is empty");
}

namespace {

using Dir = std::vector<double>;

void normalize(Dir& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
}

double line_min_angle(const std::vector<Dir>& v) {
    double worst = std::acos(-1.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            double d = std::inner_product(v[i].begin(), v[i].end(), v[j].begin(), 0.0);
            worst = std::min(worst, std::acos(std::clamp(std::abs(d), 0.0, 1.0)));
        }
    return worst;
}

// Max-min placement of L lines (antipodal point pairs) on the unit sphere in
// R^N: repulsion against both images of every other line, best of 4 restarts.
std::vector<Dir> pack_lines(int count, int dim, std::uint64_t seed) {
    std::vector<Dir> best;
    double best_angle = -1.0;
    for (int restart = 0; restart < 4; ++restart) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart), 0, /*purpose=*/11));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Dir> v(static_cast<std::size_t>(count), Dir(static_cast<std::size_t>(dim)));
        for (auto& p : v) {
            for (double& x : p) x = gauss(rng);
            normalize(p);
        }
        for (int it = 0; it < 2000; ++it) {
            const double step = 0.02 / (1.0 + 0.01 * it);
            std::vector<Dir> f(v.size(), Dir(static_cast<std::size_t>(dim), 0.0));
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j) {
                    if (i == j) continue;
                    for (int sgn : {1, -1}) {
                        Dir d(static_cast<std::size_t>(dim));
                        double n2 = 0.0;
                        for (int c = 0; c < dim; ++c) {
                            d[static_cast<std::size_t>(c)] =
                                v[i][static_cast<std::size_t>(c)] -
                                sgn * v[j][static_cast<std::size_t>(c)];
                            n2 += d[static_cast<std::size_t>(c)] * d[static_cast<std::size_t>(c)];
                        }
                        const double n = std::max(std::sqrt(n2), 1e-9);
                        const double w = 1.0 / (n * n * n);
                        for (int c = 0; c < dim; ++c)
                            f[i][static_cast<std::size_t>(c)] += w * d[static_cast<std::size_t>(c)];
                    }
                }
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (int c = 0; c < dim; ++c)
                    v[i][static_cast<std::size_t>(c)] += step * f[i][static_cast<std::size_t>(c)];
                normalize(v[i]);
            }
        }
        const double a = line_min_angle(v);
        if (a > best_angle) {
            best_angle = a;
            best = std::move(v);
        }
    }
    return best;
}

void check_xor_spec(const XorSpec& spec) {
    if (spec.n_classes < 2)
        throw std::invalid_argument("generate_xor: need at least 2 classes");
    if (spec.n_features < 2)
        throw std::invalid_argument("generate_xor: need at least 2 features");
    if (spec.points_per_class < 1)
        throw std::invalid_argument("generate_xor: need at least 1 point per class");
    // A line needs room to be distinguishable: more classes than the dimension
    // supports collapses the packing.
    if (spec.n_classes > 4 * spec.n_features)
        throw std::invalid_argument(
            "generate_xor: " + std::to_string(spec.n_classes) + " classes in " +
            std::to_string(spec.n_features) + " dimensions leaves class lines too close");
}

}  // namespace

double xor_min_line_angle(const XorSpec& spec) {
    check_xor_spec(spec);
    return line_min_angle(pack_lines(spec.n_classes, spec.n_features, spec.seed));
}

Dataset generate_xor(const XorSpec& spec) {
    check_xor_spec(spec);
    const auto dirs = pack_lines(spec.n_classes, spec.n_features, spec.seed);
    Rng rng(derive_seed(spec.seed, 0, 0, /*purpose=*/12));
    std::normal_distribution<double> gauss(0.0, 1.0);

    Dataset ds;
    ds.name = "xor-" + std::to_string(spec.n_classes);
    for (int j = 0; j < spec.n_features; ++j)
        ds.feature_names.push_back("f" + std::to_string(j));
    ds.n_classes = spec.n_classes;
    for (int c = 0; c < spec.n_classes; ++c) {
        ds.label_names.push_back(std::to_string(c));
        for (int k = 0; k < spec.points_per_class; ++k) {
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;  // alternate between the pair
            Dir x(dirs[static_cast<std::size_t>(c)]);
            for (double& v : x) v = sgn * v + spec.spread * gauss(rng);
            normalize(x);
            ds.features.push_back(std::move(x));
            ds.labels.push_back(c);
        }
    }
    ds.validate();
    return ds;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    while (p < e && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return ec == std::errc{} && p == e;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::vector<std::string>& feature_columns,
                 const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV file: " + path);

    const auto header = split_line(line);
    std::vector<std::size_t> feat_idx;
    std::size_t label_idx = header.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = trimmed(header[i]);
        if (h == label_column) {
            label_idx = i;
        } else if (feature_columns.empty() ||
                   std::find(feature_columns.begin(), feature_columns.end(), h) !=
                       feature_columns.end()) {
            feat_idx.push_back(i);
            names.push_back(h);
        }
    }
    if (label_idx == header.size())
        throw DataError(path + ": missing label column '" + label_column + "'");
    for (const auto& want : feature_columns)
        if (std::find(names.begin(), names.end(), want) == names.end())
            throw DataError(path + ": missing feature column '" + want + "'");

    Dataset ds;
    ds.name = path;
    ds.feature_names = names;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trimmed(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw DataError(path + ": row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        encoding::FeatureVector x;
        x.reserve(feat_idx.size());
        for (std::size_t i : feat_idx) {
            double v = 0.0;
            if (!parse_double(cells[i], v))
                throw DataError(path + ": row " + std::to_string(row) + " column '" +
                                trimmed(header[i]) + "': non-numeric value '" + cells[i] + "'");
            x.push_back(v);
        }
        const std::string raw = trimmed(cells[label_idx]);
        auto it = std::find(ds.label_names.begin(), ds.label_names.end(), raw);
        if (it == ds.label_names.end()) {
            ds.label_names.push_back(raw);
            it = std::prev(ds.label_names.end());
        }
        ds.labels.push_back(static_cast<int>(it - ds.label_names.begin()));
        ds.features.push_back(std::move(x));
    }
    if (ds.features.empty()) throw DataError(path + ": no data rows");
    ds.n_classes = static_cast<int>(ds.label_names.size());
    ds.validate();
    return ds;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    return load_csv(path, {}, label_column);
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write CSV file: " + path);
    for (const auto& n : ds.feature_names) out << n << ',';
    out << "label\n";
    char buf[32];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (double v : ds.features[i]) {
            const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            out.write(buf, p - buf);
            out << ',';
        }
        out << ds.label_names[static_cast<std::size_t>(ds.labels[i])] << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

Dataset balance(const Dataset& ds, int per_class, std::uint64_t seed) {
    ds.validate();
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.n_classes));
    for (std::size_t i = 0; i < ds.size(); ++i)
        by_class[static_cast<std::size_t>(ds.labels[i])].push_back(i);

    std::vector<std::size_t> keep;
    for (int c = 0; c < ds.n_classes; ++c) {
        auto& idx = by_class[static_cast<std::size_t>(c)];
        if (idx.size() < static_cast<std::size_t>(per_class))
            throw DataError("balance: class '" + ds.label_names[static_cast<std::size_t>(c)] +
                            "' has only " + std::to_string(idx.size()) + " rows, need " +
                            std::to_string(per_class));
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c), 0, /*purpose=*/13));
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(static_cast<std::size_t>(per_class));
        std::sort(idx.begin(), idx.end());
        keep.insert(keep.end(), idx.begin(), idx.end());
    }

    Dataset out;
    out.name = ds.name + "-balanced";
    out.feature_names = ds.feature_names;
    out.n_classes = ds.n_classes;
    out.label_names = ds.label_names;
    for (std::size_t i : keep) {
        out.features.push_back(ds.features[i]);
        out.labels.push_back(ds.labels[i]);
    }
    out.validate();
    return out;
}

SplitPlan make_splits(const Dataset& ds, SplitKind kind, int k, std::uint64_t seed) {
    ds.validate();
    SplitPlan plan;
    plan.kind = kind;
    const std::size_t m = ds.size();
    if (kind == SplitKind::LeaveOneOut) {
        plan.folds.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            Fold f;
            f.test.push_back(i);
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) f.train.push_back(j);
            plan.folds.push_back(std::move(f));
        }
        return plan;
    }
    if (k < 2 || static_cast<std::size_t>(k) > m)
        throw std::invalid_argument("make_splits: k must be in [2, M]");
    plan.k = k;
    plan.folds.assign(static_cast<std::size_t>(k), Fold{});

    // Stratified: deal each class's shuffled rows round-robin over folds.
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.n_classes));
    for (std::size_t i = 0; i < m; ++i)
        by_class[static_cast<std::size_t>(ds.labels[i])].push_back(i);
    std::size_t next_fold = 0;  // carried across classes so overall sizes stay even
    for (int c = 0; c < ds.n_classes; ++c) {
        auto& idx = by_class[static_cast<std::size_t>(c)];
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c), 0, /*purpose=*/14));
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i : idx) {
            plan.folds[next_fold].test.push_back(i);
            next_fold = (next_fold + 1) % static_cast<std::size_t>(k);
        }
    }
    for (auto& f : plan.folds) {
        std::sort(f.test.begin(), f.test.end());
        std::vector<char> in_test(m, 0);
        for (std::size_t i : f.test) in_test[i] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (!in_test[i]) f.train.push_back(i);
    }
    return plan;
}

}  // namespace mcst::data
