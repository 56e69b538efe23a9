#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cendet {

struct LabeledRow {
    std::vector<double> features;
    int label = 0;  // 0 or 1
};

struct LabeledDataset {
    std::vector<LabeledRow> rows;
    std::vector<std::string> feature_names;

    std::size_t dimension() const { return feature_names.size(); }
};

struct MinMaxScaler {
    std::vector<double> min;
    std::vector<double> max;
};

MinMaxScaler fit_minmax_scaler(const std::vector<LabeledRow>& train_rows);
// (x - min) / (max - min), constant features map to 0, result clamped to [0,1].
std::vector<double> apply_scaler(const MinMaxScaler& scaler, const std::vector<double>& row);

struct SvmModel {
    std::vector<std::vector<double>> support_vectors;  // scaled
    std::vector<double> dual_coefficients;             // alpha_i * y_i
    double bias = 0.0;
    double kernel_gamma = 0.01;
    double complexity_C = 1.0;
    MinMaxScaler scaler;
    double kkt_violation = 0.0;  // max violation at termination
};

// Soft-margin RBF SVM solved by SMO; KKT violations < 1e-3 at termination.
// Throws on single-class input or if 1e6 pair updates are exhausted.
SvmModel svm_train(const LabeledDataset& data, double C, double g, std::uint64_t seed);

int svm_predict(const SvmModel& model, const std::vector<double>& x);
// Signed decision value on a raw (unscaled) input.
double svm_decision(const SvmModel& model, const std::vector<double>& x);

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij of a
// trained model (alphas recovered from the signed coefficients).
double svm_dual_objective(const SvmModel& model);

struct FoldAccuracy {
    int repeat_index = 0;
    int fold_index = 0;
    double accuracy = 0.0;
};

struct CvResult {
    std::vector<FoldAccuracy> folds;
    double mean_accuracy() const;
};

// Repeated stratified k-fold CV. Rows are canonicalized (sorted by label
// then features) before the seeded shuffle, so results are invariant to
// input row order. The scaler is fit on training folds only.
CvResult repeated_stratified_cv(const LabeledDataset& data, int k, int repeats,
                                double C, double g, std::uint64_t master_seed);

// Greedy forward selection against k-fold CV accuracy; stops when the best
// improvement falls below 1e-4. Returns names in selection order.
std::vector<std::string> greedy_forward_selection(const LabeledDataset& data, int k,
                                                  double C, double g,
                                                  std::uint64_t seed);

}  // namespace cendet
