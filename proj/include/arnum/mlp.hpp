#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "arnum/features.hpp"

namespace arnum {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyTestSet : std::runtime_error {
    EmptyTestSet() : std::runtime_error("evaluation set is empty") {}
};
struct ModelParseError : std::runtime_error {
    ModelParseError(int line, const std::string& what)
        : std::runtime_error("model parse error at line " +
                             std::to_string(line) + ": " + what),
          line_number(line) {}
    int line_number;
};
struct ModelVersionMismatch : std::runtime_error {
    explicit ModelVersionMismatch(const std::string& got)
        : std::runtime_error("unsupported model version: " + got) {}
};

/// splitmix64: tiny seedable PRNG used for weight init and shuffling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1).
    double next_unit() { return (next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

struct LabeledSample {
    FeatureVector features;
    int label = 0;
};

struct TrainConfig {
    double eta = 0.8;
    double alpha = 0.7;
    int max_epochs = 300;
    double sse_tol = 0.01;
    std::uint64_t seed = 1;
};

struct TrainHistory {
    std::vector<double> epoch_sse;
    int epochs_run = 0;
};

/// Single-hidden-layer sigmoid network trained by backpropagation with
/// momentum on the sum of squared errors.
class MlpModel {
public:
    MlpModel(int n_in, int n_hidden, int n_out, std::uint64_t seed);

    int n_in() const { return static_cast<int>(w_hidden_.cols()); }
    int n_hidden() const { return static_cast<int>(w_hidden_.rows()); }
    int n_out() const { return static_cast<int>(w_out_.rows()); }

    const Eigen::MatrixXd& hidden_weights() const { return w_hidden_; }
    const Eigen::VectorXd& hidden_biases() const { return b_hidden_; }
    const Eigen::MatrixXd& output_weights() const { return w_out_; }
    const Eigen::VectorXd& output_biases() const { return b_out_; }
    Eigen::MatrixXd& hidden_weights() { return w_hidden_; }
    Eigen::VectorXd& hidden_biases() { return b_hidden_; }
    Eigen::MatrixXd& output_weights() { return w_out_; }
    Eigen::VectorXd& output_biases() { return b_out_; }

    struct Activations {
        Eigen::VectorXd hidden;
        Eigen::VectorXd output;
    };
    Activations forward(const FeatureVector& input) const;

    /// One pass over the samples in seed-shuffled order, per-pattern
    /// updates; returns the mean per-sample SSE.
    double train_epoch(const std::vector<LabeledSample>& samples,
                       const TrainConfig& cfg, std::uint64_t epoch_seed);

    TrainHistory train(const std::vector<LabeledSample>& samples,
                       const TrainConfig& cfg);

    /// Argmax output class; ties go to the smaller index.
    int classify(const FeatureVector& input) const;

    friend bool operator==(const MlpModel&, const MlpModel&);

    void save(std::ostream& os) const;
    static MlpModel load(std::istream& is);

private:
    MlpModel() = default;

    Eigen::MatrixXd w_hidden_;  // [n_hidden x n_in]
    Eigen::VectorXd b_hidden_;
    Eigen::MatrixXd w_out_;  // [n_out x n_hidden]
    Eigen::VectorXd b_out_;
    // Previous-update buffers for the momentum term.
    Eigen::MatrixXd dw_hidden_;
    Eigen::VectorXd db_hidden_;
    Eigen::MatrixXd dw_out_;
    Eigen::VectorXd db_out_;
};

struct Evaluation {
    double accuracy = 0.0;
    Eigen::MatrixXi confusion;  // [true x predicted]
};

Evaluation evaluate(const MlpModel& model,
                    const std::vector<LabeledSample>& test_set);

std::string save_model(const MlpModel& model);
MlpModel load_model(const std::string& text);

}  // namespace arnum
