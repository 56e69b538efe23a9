#include "cendet/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cendet/rng.hpp"

namespace cendet {

MinMaxScaler fit_minmax_scaler(const std::vector<LabeledRow>& train_rows) {
    if (train_rows.empty()) throw std::invalid_argument("fit_minmax_scaler: no rows");
    const std::size_t d = train_rows[0].features.size();
    MinMaxScaler s;
    s.min.assign(d, std::numeric_limits<double>::infinity());
    s.max.assign(d, -std::numeric_limits<double>::infinity());
    for (const LabeledRow& r : train_rows) {
        if (r.features.size() != d)
            throw std::invalid_argument("fit_minmax_scaler: dimension mismatch");
        for (std::size_t j = 0; j < d; ++j) {
            s.min[j] = std::min(s.min[j], r.features[j]);
            s.max[j] = std::max(s.max[j], r.features[j]);
        }
    }
    return s;
}

std::vector<double> apply_scaler(const MinMaxScaler& scaler, const std::vector<double>& row) {
    if (row.size() != scaler.min.size())
        throw std::invalid_argument("apply_scaler: dimension mismatch");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
        const double range = scaler.max[j] - scaler.min[j];
        double v = range > 0.0 ? (row[j] - scaler.min[j]) / range : 0.0;
        out[j] = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

namespace {

double rbf_kernel(const std::vector<double>& a, const std::vector<double>& b, double g) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d2 += diff * diff;
    }
    return std::exp(-g * d2);
}

// SMO working state over precomputed kernel rows.
class SmoSolver {
public:
    SmoSolver(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
              double C, double g)
        : x_(x), y_(y), C_(C), n_(x.size()) {
        kernel_.assign(n_, std::vector<double>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                kernel_[i][j] = kernel_[j][i] = rbf_kernel(x_[i], x_[j], g);
        alpha_.assign(n_, 0.0);
        error_.assign(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];  // f=0 initially
    }

    void solve() {
        for (int round = 0; round < 8; ++round) {
            run_passes();
            finalize_bias();
            if (max_kkt_violation() < kTol) return;
            // Refresh the incremental error cache from exact alphas and retry.
            recompute_errors();
        }
        throw std::runtime_error("smo failed to converge");
    }

    const std::vector<double>& alphas() const { return alpha_; }
    double bias() const { return bias_final_; }
    double kkt() const { return kkt_final_; }

    double max_kkt_violation() {
        double worst = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double margin = y_[i] * (raw_decision(i) + bias_final_);
            double v = 0.0;
            if (alpha_[i] <= kBoundEps)
                v = std::max(0.0, 1.0 - margin);
            else if (alpha_[i] >= C_ - kBoundEps)
                v = std::max(0.0, margin - 1.0);
            else
                v = std::abs(margin - 1.0);
            worst = std::max(worst, v);
        }
        kkt_final_ = worst;
        return worst;
    }

private:
    static constexpr double kTol = 1e-3;       // contract: final KKT bound
    static constexpr double kInnerTol = 2e-4;  // working tolerance of the passes
    static constexpr double kBoundEps = 1e-9;
    static constexpr long long kMaxUpdates = 1000000;

    double raw_decision(std::size_t i) const {
        double f = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            if (alpha_[j] > 0.0) f += alpha_[j] * y_[j] * kernel_[j][i];
        return f;
    }

    void recompute_errors() {
        for (std::size_t i = 0; i < n_; ++i)
            error_[i] = raw_decision(i) + b_ - y_[i];
    }

    // Maximal-violating-pair loop: pair the point with the smallest error
    // among those whose alpha can still push its class margin up against the
    // point with the largest error among those that can push down.  The gap
    // between the two bounds the optimal-bias KKT violation, so driving it
    // under 2*kInnerTol leaves every violation under kInnerTol.
    void run_passes() {
        while (true) {
            std::size_t iu = n_, il = n_;
            double eu = std::numeric_limits<double>::infinity();
            double el = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n_; ++i) {
                const bool can_up = (y_[i] == 1 && alpha_[i] < C_ - kBoundEps) ||
                                    (y_[i] == -1 && alpha_[i] > kBoundEps);
                const bool can_down = (y_[i] == -1 && alpha_[i] < C_ - kBoundEps) ||
                                      (y_[i] == 1 && alpha_[i] > kBoundEps);
                if (can_up && error_[i] < eu) {
                    eu = error_[i];
                    iu = i;
                }
                if (can_down && error_[i] > el) {
                    el = error_[i];
                    il = i;
                }
            }
            if (iu == n_ || il == n_) return;
            if (el - eu < 2.0 * kInnerTol) return;
            if (!take_step(iu, il)) return;  // no feasible progress; let solve() retry
        }
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1_old = alpha_[i1], a2_old = alpha_[i2];
        const int y1 = y_[i1], y2 = y_[i2];
        const double e1 = error_[i1], e2 = error_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2_old - a1_old);
            hi = std::min(C_, C_ + a2_old - a1_old);
        } else {
            lo = std::max(0.0, a1_old + a2_old - C_);
            hi = std::min(C_, a1_old + a2_old);
        }
        if (lo >= hi) return false;

        const double k11 = kernel_[i1][i1], k12 = kernel_[i1][i2], k22 = kernel_[i2][i2];
        // Guard eta from below so degenerate directions (near-duplicate rows or
        // a near-constant kernel) still take the full clipped step.
        const double eta = std::max(k11 + k22 - 2.0 * k12, 1e-12);
        const double a2 = std::clamp(a2_old + y2 * (e1 - e2) / eta, lo, hi);
        if (a2 == a2_old) return false;
        const double a1 = a1_old + s * (a2_old - a2);

        // Bias update keeping the KKT conditions of the updated pair.
        const double b1 = b_ - (e1 + y1 * (a1 - a1_old) * k11 + y2 * (a2 - a2_old) * k12);
        const double b2 = b_ - (e2 + y1 * (a1 - a1_old) * k12 + y2 * (a2 - a2_old) * k22);
        double b_new;
        if (a1 > kBoundEps && a1 < C_ - kBoundEps)
            b_new = b1;
        else if (a2 > kBoundEps && a2 < C_ - kBoundEps)
            b_new = b2;
        else
            b_new = (b1 + b2) / 2.0;

        const double da1 = a1 - a1_old, da2 = a2 - a2_old, db = b_new - b_;
        for (std::size_t i = 0; i < n_; ++i)
            error_[i] += y1 * da1 * kernel_[i1][i] + y2 * da2 * kernel_[i2][i] + db;
        alpha_[i1] = a1;
        alpha_[i2] = a2;
        b_ = b_new;

        if (++updates_ > kMaxUpdates) throw std::runtime_error("smo update budget exhausted");
        return true;
    }

    // Bias per contract: average over unbounded support vectors, otherwise
    // the midpoint of the interval allowed by the bound constraints.
    void finalize_bias() {
        double sum = 0.0;
        int unbounded = 0;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i) {
            const double gap = y_[i] - raw_decision(i);
            if (alpha_[i] > kBoundEps && alpha_[i] < C_ - kBoundEps) {
                sum += gap;
                ++unbounded;
            } else if ((alpha_[i] <= kBoundEps && y_[i] == 1) ||
                       (alpha_[i] >= C_ - kBoundEps && y_[i] == -1)) {
                lo = std::max(lo, gap);
            } else {
                hi = std::min(hi, gap);
            }
        }
        if (unbounded > 0)
            bias_final_ = sum / unbounded;
        else if (std::isfinite(lo) && std::isfinite(hi))
            bias_final_ = (lo + hi) / 2.0;
        else if (std::isfinite(lo))
            bias_final_ = lo;
        else if (std::isfinite(hi))
            bias_final_ = hi;
        else
            bias_final_ = 0.0;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    double C_;
    std::size_t n_;
    std::vector<std::vector<double>> kernel_;
    std::vector<double> alpha_;
    std::vector<double> error_;  // f(x_i) - y_i with working bias b_
    double b_ = 0.0;
    double bias_final_ = 0.0;
    double kkt_final_ = 0.0;
    long long updates_ = 0;
};

}  // namespace

SvmModel svm_train(const LabeledDataset& data, double C, double g, std::uint64_t seed) {
    (void)seed;  // SMO is deterministic; kept for interface stability
    if (data.rows.empty()) throw std::invalid_argument("svm_train: empty dataset");
    bool has0 = false, has1 = false;
    for (const LabeledRow& r : data.rows) (r.label == 0 ? has0 : has1) = true;
    if (!has0 || !has1) throw std::invalid_argument("svm_train: single-class input");

    SvmModel model;
    model.kernel_gamma = g;
    model.complexity_C = C;
    model.scaler = fit_minmax_scaler(data.rows);

    std::vector<std::vector<double>> x;
    std::vector<int> y;
    x.reserve(data.rows.size());
    y.reserve(data.rows.size());
    for (const LabeledRow& r : data.rows) {
        x.push_back(apply_scaler(model.scaler, r.features));
        y.push_back(r.label == 1 ? 1 : -1);
    }

    SmoSolver solver(x, y, C, g);
    solver.solve();

    for (std::size_t i = 0; i < x.size(); ++i) {
        if (solver.alphas()[i] > 1e-12) {
            model.support_vectors.push_back(x[i]);
            model.dual_coefficients.push_back(solver.alphas()[i] * y[i]);
        }
    }
    model.bias = solver.bias();
    model.kkt_violation = solver.kkt();
    return model;
}

double svm_decision(const SvmModel& model, const std::vector<double>& x) {
    if (x.size() != model.scaler.min.size())
        throw std::invalid_argument("svm_decision: dimension mismatch");
    const std::vector<double> xs = apply_scaler(model.scaler, x);
    double f = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
        f += model.dual_coefficients[i] *
             rbf_kernel(model.support_vectors[i], xs, model.kernel_gamma);
    return f;
}

int svm_predict(const SvmModel& model, const std::vector<double>& x) {
    return svm_decision(model, x) > 0.0 ? 1 : 0;  // exact ties go to class 0
}

double svm_dual_objective(const SvmModel& model) {
    double obj = 0.0;
    const std::size_t m = model.support_vectors.size();
    for (std::size_t i = 0; i < m; ++i) obj += std::abs(model.dual_coefficients[i]);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            obj -= 0.5 * model.dual_coefficients[i] * model.dual_coefficients[j] *
                   rbf_kernel(model.support_vectors[i], model.support_vectors[j],
                              model.kernel_gamma);
    return obj;
}

double CvResult::mean_accuracy() const {
    if (folds.empty()) return 0.0;
    double sum = 0.0;
    for (const FoldAccuracy& f : folds) sum += f.accuracy;
    return sum / folds.size();
}

namespace {

// Canonical row order: by label, then lexicographic features. Makes fold
// assignment a function of (dataset contents, seed) only.
std::vector<std::size_t> canonical_order(const LabeledDataset& data) {
    std::vector<std::size_t> idx(data.rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const LabeledRow& ra = data.rows[a];
        const LabeledRow& rb = data.rows[b];
        if (ra.label != rb.label) return ra.label < rb.label;
        return ra.features < rb.features;
    });
    return idx;
}

// fold id per row for one stratified split.
std::vector<int> stratified_folds(const LabeledDataset& data, int k, std::uint64_t seed) {
    const std::vector<std::size_t> order = canonical_order(data);
    std::vector<std::size_t> class0, class1;
    for (std::size_t i : order)
        (data.rows[i].label == 0 ? class0 : class1).push_back(i);

    Rng rng(seed);
    rng.shuffle(class0);
    rng.shuffle(class1);

    std::vector<int> fold(data.rows.size(), -1);
    for (std::size_t i = 0; i < class0.size(); ++i) fold[class0[i]] = static_cast<int>(i % k);
    for (std::size_t i = 0; i < class1.size(); ++i) fold[class1[i]] = static_cast<int>(i % k);
    return fold;
}

double evaluate_fold(const LabeledDataset& data, const std::vector<int>& fold_of,
                     int test_fold, double C, double g) {
    LabeledDataset train;
    train.feature_names = data.feature_names;
    std::vector<std::size_t> test_idx;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        if (fold_of[i] == test_fold)
            test_idx.push_back(i);
        else
            train.rows.push_back(data.rows[i]);
    }
    if (test_idx.empty()) throw std::runtime_error("empty test fold");
    const SvmModel model = svm_train(train, C, g, 0);
    int correct = 0;
    for (std::size_t i : test_idx)
        if (svm_predict(model, data.rows[i].features) == data.rows[i].label) ++correct;
    return static_cast<double>(correct) / test_idx.size();
}

}  // namespace

CvResult repeated_stratified_cv(const LabeledDataset& data, int k, int repeats,
                                double C, double g, std::uint64_t master_seed) {
    if (k < 2) throw std::invalid_argument("repeated_stratified_cv: k < 2");
    std::size_t n0 = 0, n1 = 0;
    for (const LabeledRow& r : data.rows) (r.label == 0 ? n0 : n1)++;
    if (n0 < static_cast<std::size_t>(k) || n1 < static_cast<std::size_t>(k))
        throw std::invalid_argument("repeated_stratified_cv: class with fewer rows than folds");

    CvResult result;
    for (int r = 0; r < repeats; ++r) {
        const std::uint64_t repeat_seed = splitmix64(master_seed ^ splitmix64(r + 1));
        const std::vector<int> fold_of = stratified_folds(data, k, repeat_seed);
        for (int f = 0; f < k; ++f)
            result.folds.push_back({r, f, evaluate_fold(data, fold_of, f, C, g)});
    }
    return result;
}

std::vector<std::string> greedy_forward_selection(const LabeledDataset& data, int k,
                                                  double C, double g,
                                                  std::uint64_t seed) {
    const std::size_t d = data.dimension();
    std::size_t n0 = 0, n1 = 0;
    for (const LabeledRow& r : data.rows) (r.label == 0 ? n0 : n1)++;
    double best_acc =
        static_cast<double>(std::max(n0, n1)) / data.rows.size();  // majority baseline

    auto restricted_cv = [&](const std::vector<std::size_t>& cols) {
        LabeledDataset sub;
        for (std::size_t c : cols) sub.feature_names.push_back(data.feature_names[c]);
        sub.rows.reserve(data.rows.size());
        for (const LabeledRow& r : data.rows) {
            LabeledRow row;
            row.label = r.label;
            for (std::size_t c : cols) row.features.push_back(r.features[c]);
            sub.rows.push_back(std::move(row));
        }
        return repeated_stratified_cv(sub, k, 1, C, g, seed).mean_accuracy();
    };

    std::vector<std::size_t> selected;
    std::vector<char> used(d, 0);
    while (selected.size() < d) {
        double step_best = -1.0;
        std::size_t step_col = d;
        for (std::size_t c = 0; c < d; ++c) {
            if (used[c]) continue;
            std::vector<std::size_t> cols = selected;
            cols.push_back(c);
            const double acc = restricted_cv(cols);
            if (acc > step_best) {  // strict: ties keep the lowest index
                step_best = acc;
                step_col = c;
            }
        }
        if (step_col == d || step_best - best_acc < 1e-4) break;
        best_acc = step_best;
        selected.push_back(step_col);
        used[step_col] = 1;
    }

    std::vector<std::string> names;
    for (std::size_t c : selected) names.push_back(data.feature_names[c]);
    return names;
}

}  // namespace cendet
