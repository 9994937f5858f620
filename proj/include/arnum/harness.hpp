#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arnum/dataset.hpp"
#include "arnum/features.hpp"
#include "arnum/mlp.hpp"

namespace arnum {

struct BenchRow {
    std::string set_id;
    std::string architecture;  // "n_in-n_hidden-n_out"
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    int epochs_run = 0;
};

struct SweepRow {
    int hidden = 0;
    double test_accuracy = 0.0;
};

struct DataSource {
    // Either a manifest (path + base dir) or a synthetic per-class count.
    std::optional<std::string> manifest_path;
    int synthetic_per_class = 0;
    std::uint64_t data_seed = 1;

    Dataset load() const;
};

/// Hidden sizes reported optimal per set; used when no override is given.
const std::map<std::string, int>& default_hidden_sizes();

struct ExperimentConfig {
    DataSource source;
    int train_per_class = 200;
    int test_per_class = 100;
    std::uint64_t split_seed = 1;
    TrainConfig train;
    std::vector<std::string> sets;  // empty means all seven
    std::optional<int> hidden_override;
    int restarts = 1;  // independently seeded runs per job; best test accuracy kept
};

std::vector<LabeledSample> extract_samples(const Dataset& ds,
                                           const FeatureSetSpec& set);

std::vector<BenchRow> run_bench(const ExperimentConfig& cfg);

struct SweepResult {
    std::vector<SweepRow> rows;
    int best_hidden = 0;
};

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& set_id,
                      const std::vector<int>& hidden_sizes);

/// Per-run training seed for a sweep/bench job, derived from the master
/// seed, the hidden size and the restart index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b);

std::string write_report(const std::vector<BenchRow>& rows);
std::string write_report(const std::vector<SweepRow>& rows);

/// Feature CSV: header `label,f0,...,f{n-1}`, 6 decimal places.
std::string write_feature_csv(const std::vector<LabeledSample>& samples);

}  // namespace arnum
