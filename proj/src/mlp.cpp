#include "arnum/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace arnum {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double uniform_weight(SplitMix64& rng) { return rng.next_unit() - 0.5; }

}  // namespace

MlpModel::MlpModel(int n_in, int n_hidden, int n_out, std::uint64_t seed) {
    if (n_in < 1 || n_hidden < 1 || n_out < 1)
        throw DimensionMismatch("layer sizes must be >= 1");
    w_hidden_.resize(n_hidden, n_in);
    b_hidden_.resize(n_hidden);
    w_out_.resize(n_out, n_hidden);
    b_out_.resize(n_out);

    // Fixed draw order: layer by layer, weights row-major, biases after.
    SplitMix64 rng(seed);
    for (int j = 0; j < n_hidden; ++j)
        for (int i = 0; i < n_in; ++i) w_hidden_(j, i) = uniform_weight(rng);
    for (int j = 0; j < n_hidden; ++j) b_hidden_(j) = uniform_weight(rng);
    for (int k = 0; k < n_out; ++k)
        for (int j = 0; j < n_hidden; ++j) w_out_(k, j) = uniform_weight(rng);
    for (int k = 0; k < n_out; ++k) b_out_(k) = uniform_weight(rng);

    dw_hidden_ = Eigen::MatrixXd::Zero(n_hidden, n_in);
    db_hidden_ = Eigen::VectorXd::Zero(n_hidden);
    dw_out_ = Eigen::MatrixXd::Zero(n_out, n_hidden);
    db_out_ = Eigen::VectorXd::Zero(n_out);
}

MlpModel::Activations MlpModel::forward(const FeatureVector& input) const {
    if (input.size() != n_in())
        throw DimensionMismatch("forward: input length " +
                                std::to_string(input.size()) + " != n_in " +
                                std::to_string(n_in()));
    Activations act;
    act.hidden = (w_hidden_ * input + b_hidden_).unaryExpr([](double z) {
        return sigmoid(z);
    });
    act.output = (w_out_ * act.hidden + b_out_).unaryExpr([](double z) {
        return sigmoid(z);
    });
    return act;
}

double MlpModel::train_epoch(const std::vector<LabeledSample>& samples,
                             const TrainConfig& cfg,
                             std::uint64_t epoch_seed) {
    std::vector<size_t> order(samples.size());
    std::iota(order.begin(), order.end(), size_t{0});
    SplitMix64 rng(epoch_seed);
    for (size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);

    double total_sse = 0.0;
    for (size_t idx : order) {
        const LabeledSample& s = samples[idx];
        if (s.label < 0 || s.label >= n_out())
            throw DimensionMismatch("label out of range: " +
                                    std::to_string(s.label));
        const Activations act = forward(s.features);

        Eigen::VectorXd target = Eigen::VectorXd::Zero(n_out());
        target(s.label) = 1.0;
        const Eigen::VectorXd err = target - act.output;
        total_sse += err.squaredNorm();

        // Descent objective L = 1/2 sum_k (t_k - o_k)^2, so
        // -dL/dnet_k = err_k o_k (1-o_k); the reported SSE stays 2L.
        const Eigen::VectorXd delta_out = err.cwiseProduct(act.output.cwiseProduct(
            Eigen::VectorXd::Ones(n_out()) - act.output));
        const Eigen::VectorXd delta_hidden =
            (w_out_.transpose() * delta_out)
                .cwiseProduct(act.hidden.cwiseProduct(
                    Eigen::VectorXd::Ones(n_hidden()) - act.hidden));

        // Momentum smooths the per-pattern step without inflating it:
        // Delta(t) = (1 - alpha) * eta * (-dL/dw) + alpha * Delta(t-1).
        // The (1 - alpha) factor keeps the steady-state step at eta times
        // the averaged gradient; the compounding form eta*g + alpha*Delta
        // multiplies the effective step by 1/(1-alpha) and diverges at the
        // default eta/alpha on realistic feature sets.
        const double gain = (1.0 - cfg.alpha) * cfg.eta;
        dw_out_ = gain * (delta_out * act.hidden.transpose()) +
                  cfg.alpha * dw_out_;
        db_out_ = gain * delta_out + cfg.alpha * db_out_;
        dw_hidden_ = gain * (delta_hidden * s.features.transpose()) +
                     cfg.alpha * dw_hidden_;
        db_hidden_ = gain * delta_hidden + cfg.alpha * db_hidden_;

        w_out_ += dw_out_;
        b_out_ += db_out_;
        w_hidden_ += dw_hidden_;
        b_hidden_ += db_hidden_;
    }
    return samples.empty() ? 0.0 : total_sse / static_cast<double>(samples.size());
}

TrainHistory MlpModel::train(const std::vector<LabeledSample>& samples,
                             const TrainConfig& cfg) {
    TrainHistory hist;
    SplitMix64 seeder(cfg.seed);
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        const double sse = train_epoch(samples, cfg, seeder.next());
        hist.epoch_sse.push_back(sse);
        ++hist.epochs_run;
        if (sse < cfg.sse_tol) break;
    }
    return hist;
}

int MlpModel::classify(const FeatureVector& input) const {
    const Eigen::VectorXd out = forward(input).output;
    int best = 0;
    for (int k = 1; k < out.size(); ++k)
        if (out(k) > out(best)) best = k;
    return best;
}

bool operator==(const MlpModel& a, const MlpModel& b) {
    return a.w_hidden_ == b.w_hidden_ && a.b_hidden_ == b.b_hidden_ &&
           a.w_out_ == b.w_out_ && a.b_out_ == b.b_out_;
}

namespace {

void write_row(std::ostream& os, const double* v, int n) {
    char buf[64];
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        os << buf;
        os << (i + 1 < n ? ' ' : '\n');
    }
}

}  // namespace

void MlpModel::save(std::ostream& os) const {
    os << "MLPV1\n" << n_in() << ' ' << n_hidden() << ' ' << n_out() << '\n';
    for (int j = 0; j < n_hidden(); ++j) {
        Eigen::VectorXd row = w_hidden_.row(j);
        write_row(os, row.data(), n_in());
    }
    write_row(os, b_hidden_.data(), n_hidden());
    for (int k = 0; k < n_out(); ++k) {
        Eigen::VectorXd row = w_out_.row(k);
        write_row(os, row.data(), n_hidden());
    }
    write_row(os, b_out_.data(), n_out());
}

namespace {

std::vector<double> parse_row(std::istream& is, int line_no, int expected) {
    std::string line;
    if (!std::getline(is, line))
        throw ModelParseError(line_no, "unexpected end of document");
    std::istringstream ls(line);
    std::vector<double> vals;
    double v;
    while (ls >> v) vals.push_back(v);
    if (static_cast<int>(vals.size()) != expected)
        throw ModelParseError(line_no, "expected " + std::to_string(expected) +
                                           " values, got " +
                                           std::to_string(vals.size()));
    return vals;
}

}  // namespace

MlpModel MlpModel::load(std::istream& is) {
    std::string magic;
    if (!std::getline(is, magic)) throw ModelParseError(1, "empty document");
    if (magic != "MLPV1") throw ModelVersionMismatch(magic);

    std::string sizes_line;
    if (!std::getline(is, sizes_line))
        throw ModelParseError(2, "missing layer sizes");
    std::istringstream ss(sizes_line);
    int n_in = 0, n_hidden = 0, n_out = 0;
    if (!(ss >> n_in >> n_hidden >> n_out) || n_in < 1 || n_hidden < 1 ||
        n_out < 1)
        throw ModelParseError(2, "bad layer sizes");

    MlpModel m;
    m.w_hidden_.resize(n_hidden, n_in);
    m.b_hidden_.resize(n_hidden);
    m.w_out_.resize(n_out, n_hidden);
    m.b_out_.resize(n_out);
    int line_no = 3;
    for (int j = 0; j < n_hidden; ++j, ++line_no) {
        const auto row = parse_row(is, line_no, n_in);
        for (int i = 0; i < n_in; ++i) m.w_hidden_(j, i) = row[i];
    }
    {
        const auto row = parse_row(is, line_no++, n_hidden);
        for (int j = 0; j < n_hidden; ++j) m.b_hidden_(j) = row[j];
    }
    for (int k = 0; k < n_out; ++k, ++line_no) {
        const auto row = parse_row(is, line_no, n_hidden);
        for (int j = 0; j < n_hidden; ++j) m.w_out_(k, j) = row[j];
    }
    {
        const auto row = parse_row(is, line_no++, n_out);
        for (int k = 0; k < n_out; ++k) m.b_out_(k) = row[k];
    }
    m.dw_hidden_ = Eigen::MatrixXd::Zero(n_hidden, n_in);
    m.db_hidden_ = Eigen::VectorXd::Zero(n_hidden);
    m.dw_out_ = Eigen::MatrixXd::Zero(n_out, n_hidden);
    m.db_out_ = Eigen::VectorXd::Zero(n_out);
    return m;
}

Evaluation evaluate(const MlpModel& model,
                    const std::vector<LabeledSample>& test_set) {
    if (test_set.empty()) throw EmptyTestSet();
    Evaluation ev;
    ev.confusion = Eigen::MatrixXi::Zero(model.n_out(), model.n_out());
    int correct = 0;
    for (const auto& s : test_set) {
        if (s.label < 0 || s.label >= model.n_out())
            throw DimensionMismatch("label out of range: " +
                                    std::to_string(s.label));
        const int pred = model.classify(s.features);
        ev.confusion(s.label, pred) += 1;
        if (pred == s.label) ++correct;
    }
    ev.accuracy = static_cast<double>(correct) / test_set.size();
    return ev;
}

std::string save_model(const MlpModel& model) {
    std::ostringstream os;
    model.save(os);
    return os.str();
}

MlpModel load_model(const std::string& text) {
    std::istringstream is(text);
    return MlpModel::load(is);
}

}  // namespace arnum
