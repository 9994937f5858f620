#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arnum/harness.hpp"
#include <sstream>

using namespace arnum;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.source.synthetic_per_class = 12;
    cfg.source.data_seed = 1;
    cfg.train_per_class = 8;
    cfg.test_per_class = 4;
    cfg.split_seed = 2;
    cfg.train.max_epochs = 3;
    cfg.train.sse_tol = 0.0;
    cfg.train.seed = 3;
    return cfg;
}

}  // namespace

TEST_CASE("run_bench") {
    SUBCASE("all seven sets render the reported architectures") {
        const auto rows = run_bench(tiny_config());
        REQUIRE(rows.size() == 7);
        const char* expected[] = {"88-54-10", "24-14-10",  "40-24-10",
                                  "36-24-10", "128-80-10", "100-65-10",
                                  "124-80-10"};
        for (int i = 0; i < 7; ++i) {
            CHECK(rows[i].set_id == "Set" + std::to_string(i + 1));
            CHECK(rows[i].architecture == expected[i]);
            CHECK(rows[i].epochs_run == 3);
            CHECK(rows[i].test_accuracy >= 0.0);
            CHECK(rows[i].test_accuracy <= 1.0);
        }
    }
    SUBCASE("single set selection") {
        ExperimentConfig cfg = tiny_config();
        cfg.sets = {"Set3"};
        const auto rows = run_bench(cfg);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].architecture == "40-24-10");
    }
    SUBCASE("identical configs give byte-identical reports") {
        ExperimentConfig cfg = tiny_config();
        cfg.sets = {"Set2", "Set4"};
        CHECK(write_report(run_bench(cfg)) == write_report(run_bench(cfg)));
    }
    SUBCASE("hidden override changes the architecture") {
        ExperimentConfig cfg = tiny_config();
        cfg.sets = {"Set4"};
        cfg.hidden_override = 7;
        CHECK(run_bench(cfg)[0].architecture == "36-7-10");
    }
}

TEST_CASE("run_sweep") {
    SUBCASE("singleton grid selects its only size") {
        const SweepResult res = run_sweep(tiny_config(), "Set2", {5});
        REQUIRE(res.rows.size() == 1);
        CHECK(res.rows[0].hidden == 5);
        CHECK(res.best_hidden == 5);
    }
    SUBCASE("rows follow input order and best is argmax") {
        const SweepResult res = run_sweep(tiny_config(), "Set2", {9, 3, 6});
        REQUIRE(res.rows.size() == 3);
        CHECK(res.rows[0].hidden == 9);
        CHECK(res.rows[1].hidden == 3);
        CHECK(res.rows[2].hidden == 6);
        double best_acc = -1.0;
        int best = 0;
        for (const SweepRow& r : res.rows)
            if (r.test_accuracy > best_acc ||
                (r.test_accuracy == best_acc && r.hidden < best)) {
                best_acc = r.test_accuracy;
                best = r.hidden;
            }
        CHECK(res.best_hidden == best);
    }
    SUBCASE("equal accuracies tie toward the smaller size") {
        // Zero epochs of training is impossible (max_epochs >= 1), but one
        // epoch on one sample per class routinely ties; assert the rule on
        // the emitted rows instead of forcing a tie.
        const SweepResult res = run_sweep(tiny_config(), "Set2", {6, 3});
        if (res.rows[0].test_accuracy == res.rows[1].test_accuracy)
            CHECK(res.best_hidden == 3);
    }
    SUBCASE("empty grid is rejected") {
        CHECK_THROWS_AS(run_sweep(tiny_config(), "Set2", {}),
                        std::invalid_argument);
    }
}

TEST_CASE("write_report") {
    SUBCASE("bench row formatting") {
        BenchRow row{"Set1", "88-54-10", 0.999, 0.958, 120};
        CHECK(write_report(std::vector<BenchRow>{row}) ==
              "set,arch,train_acc,test_acc,epochs\n"
              "Set1,88-54-10,99.90,95.80,120\n");
    }
    SUBCASE("empty lists emit header-only documents") {
        CHECK(write_report(std::vector<BenchRow>{}) ==
              "set,arch,train_acc,test_acc,epochs\n");
        CHECK(write_report(std::vector<SweepRow>{}) == "hidden,test_acc\n");
    }
    SUBCASE("sweep rows in input order") {
        std::vector<SweepRow> rows = {{20, 0.949}, {54, 0.958}};
        CHECK(write_report(rows) == "hidden,test_acc\n20,94.90\n54,95.80\n");
    }
}

TEST_CASE("feature CSV format") {
    Dataset ds = generate_synthetic(1, 1);
    ds.samples.erase(ds.samples.begin() + 2, ds.samples.end());
    const auto samples = extract_samples(ds, feature_set("Set2"));
    const std::string csv = write_feature_csv(samples);
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header.substr(0, 11) == "label,f0,f1");
    CHECK(header.find(",f23") != std::string::npos);
    CHECK(header.find(",f24") == std::string::npos);
    std::string row;
    std::getline(is, row);
    CHECK(row[0] == '0');
    // 6 decimal places per value
    CHECK(row.find('.') != std::string::npos);
    const size_t dot = row.find('.');
    CHECK(row[dot + 7] == ',');
}
