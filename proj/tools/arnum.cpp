#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arnum/harness.hpp"

namespace fs = std::filesystem;
using namespace arnum;

namespace {

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << bytes;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct DataOpts {
    std::string manifest;
    int synthetic = 0;
    std::uint64_t seed = 1;

    DataSource source() const {
        DataSource src;
        if (!manifest.empty())
            src.manifest_path = manifest;
        else if (synthetic > 0)
            src.synthetic_per_class = synthetic;
        else
            throw CLI::ValidationError("provide --data or --synthetic");
        src.data_seed = seed;
        return src;
    }
};

void add_data_opts(CLI::App* cmd, DataOpts& opts) {
    auto* data = cmd->add_option("--data", opts.manifest, "manifest CSV path");
    auto* synth = cmd->add_option("--synthetic", opts.synthetic,
                                  "generate N synthetic samples per class");
    data->excludes(synth);
}

int run(int argc, char** argv) {
    CLI::App app{"handwritten numeral feature extraction and MLP experiments"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write synthetic PBMs + manifest");
    int gen_per_class = 300;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--per-class", gen_per_class, "samples per class")
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--out", gen_out, "output directory")->required();

    // shared experiment options
    DataOpts data;
    std::uint64_t seed = 1;
    double eta = 0.8, alpha = 0.7;
    int epochs = 300;
    int restarts = 1;
    int train_pc = 200, test_pc = 100;
    std::string set_id, out_path, model_path, hidden_list;
    int hidden = 0;

    auto* extract = app.add_subcommand("extract", "extract features to CSV");
    add_data_opts(extract, data);
    extract->add_option("--set", set_id, "feature set (Set1..Set7)")->required();
    extract->add_option("--seed", seed, "data seed for --synthetic");
    extract->add_option("--out", out_path, "output CSV")->required();

    auto* train = app.add_subcommand("train", "train an MLP on a data source");
    add_data_opts(train, data);
    train->add_option("--set", set_id)->required();
    train->add_option("--hidden", hidden, "hidden layer size");
    train->add_option("--eta", eta, "learning rate");
    train->add_option("--alpha", alpha, "momentum");
    train->add_option("--epochs", epochs, "max epochs");
    train->add_option("--seed", seed, "master seed");
    train->add_option("--model-out", model_path, "model file")->required();

    auto* eval = app.add_subcommand("eval", "evaluate a saved model");
    add_data_opts(eval, data);
    eval->add_option("--model", model_path)->required();
    eval->add_option("--set", set_id)->required();
    eval->add_option("--seed", seed, "data seed for --synthetic");

    auto* bench = app.add_subcommand("bench", "per-set benchmark report");
    add_data_opts(bench, data);
    std::string sets_arg = "all";
    bench->add_option("--sets", sets_arg, "all or Set1,Set4,...");
    bench->add_option("--hidden", hidden, "override hidden size for all sets");
    bench->add_option("--eta", eta);
    bench->add_option("--alpha", alpha);
    bench->add_option("--epochs", epochs);
    bench->add_option("--seed", seed, "master seed");
    bench->add_option("--restarts", restarts, "runs per set, best kept");
    bench->add_option("--train-per-class", train_pc);
    bench->add_option("--test-per-class", test_pc);
    bench->add_option("--out", out_path, "report CSV")->required();

    auto* sweep = app.add_subcommand("sweep", "hidden-size sweep for one set");
    add_data_opts(sweep, data);
    sweep->add_option("--set", set_id)->required();
    sweep->add_option("--hidden", hidden_list, "comma list of hidden sizes")
        ->required();
    sweep->add_option("--eta", eta);
    sweep->add_option("--alpha", alpha);
    sweep->add_option("--epochs", epochs);
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--restarts", restarts, "runs per size, best kept");
    sweep->add_option("--train-per-class", train_pc);
    sweep->add_option("--test-per-class", test_pc);
    sweep->add_option("--out", out_path, "sweep CSV")->required();

    CLI11_PARSE(app, argc, argv);

    auto experiment_config = [&]() {
        ExperimentConfig cfg;
        cfg.source = data.source();
        cfg.source.data_seed = derive_seed(seed, 0xda7a, 0);
        cfg.split_seed = derive_seed(seed, 0x5b11, 0);
        cfg.train_per_class = train_pc;
        cfg.test_per_class = test_pc;
        cfg.train.eta = eta;
        cfg.train.alpha = alpha;
        cfg.train.max_epochs = epochs;
        cfg.train.seed = seed;
        cfg.restarts = restarts;
        if (hidden > 0) cfg.hidden_override = hidden;
        return cfg;
    };

    if (gen->parsed()) {
        fs::create_directories(gen_out);
        const Dataset ds = generate_synthetic(gen_per_class, gen_seed);
        std::string manifest;
        for (const Sample& s : ds.samples) {
            char name[64];
            std::snprintf(name, sizeof name, "d%d_%05d.pbm", s.label,
                          s.source_id);
            write_file(gen_out + "/" + name,
                       write_pbm(s.image, PbmVariant::P1));
            manifest += std::string(name) + "," + std::to_string(s.label) + "\n";
        }
        write_file(gen_out + "/manifest.csv", manifest);
        std::cout << "wrote " << ds.samples.size() << " samples to " << gen_out
                  << "\n";
    } else if (extract->parsed()) {
        DataSource src = data.source();
        src.data_seed = seed;
        const auto samples = extract_samples(src.load(), feature_set(set_id));
        write_file(out_path, write_feature_csv(samples));
        std::cout << "wrote " << samples.size() << " rows to " << out_path
                  << "\n";
    } else if (train->parsed()) {
        DataSource src = data.source();
        src.data_seed = derive_seed(seed, 0xda7a, 0);
        const FeatureSetSpec& set = feature_set(set_id);
        const auto samples = extract_samples(src.load(), set);
        const int n_hidden =
            hidden > 0 ? hidden : default_hidden_sizes().at(set_id);
        TrainConfig cfg;
        cfg.eta = eta;
        cfg.alpha = alpha;
        cfg.max_epochs = epochs;
        cfg.seed = seed;
        MlpModel model(set.dimension, n_hidden, 10, seed);
        const TrainHistory hist = model.train(samples, cfg);
        std::ofstream mf(model_path);
        if (!mf) throw std::runtime_error("cannot write " + model_path);
        model.save(mf);
        std::cout << "trained " << set.dimension << "-" << n_hidden
                  << "-10 for " << hist.epochs_run << " epochs, final SSE "
                  << hist.epoch_sse.back() << "\n";
    } else if (eval->parsed()) {
        DataSource src = data.source();
        src.data_seed = derive_seed(seed, 0xda7a, 0);
        std::ifstream mf(model_path);
        if (!mf) throw std::runtime_error("cannot open " + model_path);
        const MlpModel model = MlpModel::load(mf);
        const auto samples = extract_samples(src.load(), feature_set(set_id));
        const Evaluation ev = evaluate(model, samples);
        std::cout << "accuracy: " << ev.accuracy * 100.0 << "%\n"
                  << "confusion (rows = true class, cols = predicted):\n"
                  << ev.confusion << "\n";
    } else if (bench->parsed()) {
        ExperimentConfig cfg = experiment_config();
        if (sets_arg != "all") cfg.sets = split_list(sets_arg);
        const auto rows = run_bench(cfg);
        write_file(out_path, write_report(rows));
        std::cout << write_report(rows);
    } else if (sweep->parsed()) {
        ExperimentConfig cfg = experiment_config();
        std::vector<int> sizes;
        for (const auto& tok : split_list(hidden_list))
            sizes.push_back(std::stoi(tok));
        const SweepResult res = run_sweep(cfg, set_id, sizes);
        write_file(out_path, write_report(res.rows));
        std::cout << write_report(res.rows) << "best: " << res.best_hidden
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
