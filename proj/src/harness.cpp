#include "arnum/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace arnum {

Dataset DataSource::load() const {
    if (manifest_path) {
        std::ifstream f(*manifest_path);
        if (!f) throw ManifestError("cannot open manifest: " + *manifest_path);
        std::ostringstream os;
        os << f.rdbuf();
        return load_manifest(
            os.str(),
            std::filesystem::path(*manifest_path).parent_path().string());
    }
    return generate_synthetic(synthetic_per_class, data_seed);
}

const std::map<std::string, int>& default_hidden_sizes() {
    static const std::map<std::string, int> sizes = {
        {"Set1", 54}, {"Set2", 14}, {"Set3", 24}, {"Set4", 24},
        {"Set5", 80}, {"Set6", 65}, {"Set7", 80},
    };
    return sizes;
}

std::vector<LabeledSample> extract_samples(const Dataset& ds,
                                           const FeatureSetSpec& set) {
    std::vector<LabeledSample> out;
    out.reserve(ds.samples.size());
    for (const Sample& s : ds.samples)
        out.push_back({extract_set(s.image, set), s.label});
    return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) {
    SplitMix64 rng(master ^ (a * 0x9e3779b97f4a7c15ULL) ^
                   (b * 0xbf58476d1ce4e5b9ULL));
    return rng.next();
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

namespace {

struct TrainedRun {
    MlpModel model;
    int epochs_run;
    double test_accuracy;
};

TrainedRun train_best(const std::vector<LabeledSample>& train_set,
                      const std::vector<LabeledSample>& test_set, int n_in,
                      int hidden, const TrainConfig& base_cfg,
                      std::uint64_t job_tag, int restarts) {
    std::optional<TrainedRun> best;
    for (int r = 0; r < restarts; ++r) {
        TrainConfig cfg = base_cfg;
        cfg.seed = derive_seed(base_cfg.seed, job_tag,
                               static_cast<std::uint64_t>(hidden) * 1000 + r);
        MlpModel model(n_in, hidden, 10, cfg.seed);
        const TrainHistory hist = model.train(train_set, cfg);
        const double acc = evaluate(model, test_set).accuracy;
        if (!best || acc > best->test_accuracy)
            best = TrainedRun{std::move(model), hist.epochs_run, acc};
    }
    return std::move(*best);
}

}  // namespace

std::vector<BenchRow> run_bench(const ExperimentConfig& cfg) {
    const Dataset ds = cfg.source.load();
    const SplitPair pair =
        split(ds, cfg.train_per_class, cfg.test_per_class, cfg.split_seed);

    std::vector<std::string> set_ids = cfg.sets;
    if (set_ids.empty())
        for (const auto& s : feature_set_registry()) set_ids.push_back(s.id);

    std::vector<BenchRow> rows;
    for (const std::string& id : set_ids) {
        const FeatureSetSpec& set = feature_set(id);
        const int hidden = cfg.hidden_override
                               ? *cfg.hidden_override
                               : default_hidden_sizes().at(id);
        try {
            const auto train_set = extract_samples(pair.train, set);
            const auto test_set = extract_samples(pair.test, set);
            TrainedRun run =
                train_best(train_set, test_set, set.dimension, hidden,
                           cfg.train, fnv1a(id), cfg.restarts);
            BenchRow row;
            row.set_id = id;
            row.architecture = std::to_string(set.dimension) + "-" +
                               std::to_string(hidden) + "-10";
            row.train_accuracy = evaluate(run.model, train_set).accuracy;
            row.test_accuracy = run.test_accuracy;
            row.epochs_run = run.epochs_run;
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            throw std::runtime_error(id + ": " + e.what());
        }
    }
    return rows;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& set_id,
                      const std::vector<int>& hidden_sizes) {
    if (hidden_sizes.empty())
        throw std::invalid_argument("sweep needs at least one hidden size");
    const FeatureSetSpec& set = feature_set(set_id);

    const Dataset ds = cfg.source.load();
    const SplitPair pair =
        split(ds, cfg.train_per_class, cfg.test_per_class, cfg.split_seed);
    const auto train_set = extract_samples(pair.train, set);
    const auto test_set = extract_samples(pair.test, set);

    SweepResult result;
    double best_acc = -1.0;
    for (int hidden : hidden_sizes) {
        if (hidden < 1)
            throw std::invalid_argument("hidden size must be >= 1");
        const TrainedRun run =
            train_best(train_set, test_set, set.dimension, hidden, cfg.train,
                       fnv1a(set_id), cfg.restarts);
        result.rows.push_back({hidden, run.test_accuracy});
        // Best by test accuracy, ties toward the smaller size.
        if (run.test_accuracy > best_acc ||
            (run.test_accuracy == best_acc && hidden < result.best_hidden)) {
            best_acc = run.test_accuracy;
            result.best_hidden = hidden;
        }
    }
    return result;
}

namespace {

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
    return buf;
}

}  // namespace

std::string write_report(const std::vector<BenchRow>& rows) {
    std::string out = "set,arch,train_acc,test_acc,epochs\n";
    for (const BenchRow& r : rows)
        out += r.set_id + "," + r.architecture + "," + percent(r.train_accuracy) +
               "," + percent(r.test_accuracy) + "," +
               std::to_string(r.epochs_run) + "\n";
    return out;
}

std::string write_report(const std::vector<SweepRow>& rows) {
    std::string out = "hidden,test_acc\n";
    for (const SweepRow& r : rows)
        out += std::to_string(r.hidden) + "," + percent(r.test_accuracy) + "\n";
    return out;
}

std::string write_feature_csv(const std::vector<LabeledSample>& samples) {
    std::ostringstream os;
    const int n = samples.empty() ? 0 : static_cast<int>(samples[0].features.size());
    os << "label";
    for (int i = 0; i < n; ++i) os << ",f" << i;
    os << '\n';
    char buf[32];
    for (const LabeledSample& s : samples) {
        os << s.label;
        for (int i = 0; i < s.features.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.6f", s.features[i]);
            os << ',' << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace arnum
