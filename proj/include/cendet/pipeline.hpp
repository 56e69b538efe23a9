#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cendet/censor.hpp"
#include "cendet/features.hpp"
#include "cendet/learn.hpp"

namespace cendet {

struct ExperimentConfig {
    int n_graphs = 100;
    int n_nodes = 1000;
    double alpha = 2.0;
    std::vector<double> gammas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    std::vector<CensorStrategy> strategies = {CensorStrategy::uniform, CensorStrategy::icm};
    double icm_p = 0.1;
    double icm_seed_fraction = 0.005;
    double svm_C = 1.0;
    double svm_g = 0.01;
    int folds = 10;
    int repeats = 10;
    std::uint64_t master_seed = 0;
    std::string out_dir = "out";
    bool write_graphs = true;
    bool run_feature_selection = true;
};

struct CellRecord {
    std::string strategy;
    double gamma = 0.0;
    int repeat_index = 0;
    int fold_index = 0;
    double accuracy = 0.0;
};

struct CellSummary {
    std::string strategy;
    double gamma = 0.0;
    double mean_accuracy = 0.0;
    double stddev_accuracy = 0.0;
};

struct EvalReport {
    std::vector<CellRecord> records;
    std::vector<CellSummary> aggregates;
    std::vector<std::string> aborted_cells;  // "strategy gamma: reason"
};

// Deterministic mix of the master seed with a labeled path; stable across
// runs and platforms.
std::uint64_t derive_seed(std::uint64_t master_seed, const std::vector<std::string>& labels);

// Canonical short form used in file columns and seed paths (e.g. "0.1").
std::string format_gamma(double gamma);

EvalReport run_experiment(const ExperimentConfig& config);

// In-memory view of a features.csv: base rows plus censored rows per
// (strategy, gamma string) cell.
struct FeatureTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> base;
    std::map<std::pair<std::string, std::string>, std::vector<std::vector<double>>> cells;
};

FeatureTable read_feature_table(const std::string& path);

// Pairwise dataset for one cell: base rows labeled 0, censored rows labeled 1.
LabeledDataset cell_dataset(const FeatureTable& table, const std::string& strategy,
                            const std::string& gamma);

// Plot-ready CSVs (means + 95% CI) derived from features.csv / results.csv
// already present in dir.
void write_plot_data(const std::string& dir);

}  // namespace cendet
