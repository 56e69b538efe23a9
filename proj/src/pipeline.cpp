#include "cendet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cendet/netgen.hpp"
#include "cendet/rng.hpp"

namespace fs = std::filesystem;

namespace cendet {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Atomic single-writer file output: temp file then rename.
class AtomicFile {
public:
    explicit AtomicFile(const std::string& path)
        : path_(path), tmp_(path + ".tmp"), os_(tmp_, std::ios::binary) {
        if (!os_) throw std::runtime_error("cannot open for writing: " + tmp_);
    }
    std::ostream& stream() { return os_; }
    void commit() {
        os_.close();
        fs::rename(tmp_, path_);
    }

private:
    std::string path_, tmp_;
    std::ofstream os_;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct MeanCi {
    double mean = 0.0;
    double ci95 = 0.0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
    MeanCi m;
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= xs.size();
    if (xs.size() < 2) return m;
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    const double sd = std::sqrt(ss / (xs.size() - 1));
    m.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
    return m;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, const std::vector<std::string>& labels) {
    std::uint64_t h = kFnvOffset;
    unsigned char master_bytes[8];
    for (int i = 0; i < 8; ++i)
        master_bytes[i] = static_cast<unsigned char>(master_seed >> (8 * i));
    h = fnv1a(h, master_bytes, 8);
    for (const std::string& label : labels) {
        h = fnv1a(h, label.data(), label.size());
        h = fnv1a(h, "\x1f", 1);  // label separator
    }
    return splitmix64(h);
}

std::string format_gamma(double gamma) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", gamma);
    return buf;
}

namespace {

std::string graph_file_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "graph_%03d", index);
    return buf;
}

void write_feature_row(std::ostream& os, const std::string& graph_id,
                       const std::string& strategy, const std::string& gamma,
                       const FeatureVector& f, int label) {
    os << graph_id << "," << strategy << "," << gamma;
    for (double v : f.values) os << "," << format_double(v);
    os << "," << label << "\n";
}

}  // namespace

EvalReport run_experiment(const ExperimentConfig& config) {
    if (config.n_graphs < 1 || config.n_nodes < kSpectralFeatureCount || config.folds < 2 ||
        config.repeats < 1)
        throw std::invalid_argument("run_experiment: invalid config");
    fs::create_directories(config.out_dir);
    const fs::path out(config.out_dir);
    if (config.write_graphs) fs::create_directories(out / "graphs");

    std::vector<std::string> seed_ledger;
    auto seed_for = [&](std::vector<std::string> labels) {
        const std::uint64_t s = derive_seed(config.master_seed, labels);
        std::string joined;
        for (const auto& l : labels) joined += "/" + l;
        seed_ledger.push_back(joined + " = " + std::to_string(s));
        return s;
    };

    // Step 1 + 3: generate base graphs and compute their features once.
    std::vector<DirectedMultigraph> base_graphs;
    std::vector<FeatureVector> base_features;
    base_graphs.reserve(config.n_graphs);
    for (int i = 0; i < config.n_graphs; ++i) {
        GenerationConfig gc{config.n_nodes, config.alpha,
                            seed_for({"graph", std::to_string(i)})};
        CmResult cm = generate_reply_graph(gc);
        if (config.write_graphs) {
            const std::string stem = (out / "graphs" / graph_file_name(i)).string();
            AtomicFile ef(stem + ".edges");
            write_edge_list(ef.stream(), cm.graph);
            ef.commit();
            AtomicFile mf(stem + ".meta");
            mf.stream() << "n=" << gc.n << "\nalpha=" << format_double(gc.alpha)
                        << "\nseed=" << gc.seed
                        << "\nresidual_self_loops_deleted=" << cm.residual_self_loops_deleted
                        << "\n";
            mf.commit();
        }
        base_features.push_back(extract_features(cm.graph));
        base_graphs.push_back(std::move(cm.graph));
    }

    // Step 2 + 3 per cell: censor every graph, featurize, then Step 4: CV.
    EvalReport report;
    std::ostringstream feature_rows;
    for (int i = 0; i < config.n_graphs; ++i)
        write_feature_row(feature_rows, graph_file_name(i), "none", "0", base_features[i], 0);

    std::ostringstream selection_rows;
    for (CensorStrategy strategy : config.strategies) {
        const std::string strat = to_string(strategy);
        for (double gamma : config.gammas) {
            const std::string gs = format_gamma(gamma);
            try {
                LabeledDataset dataset;
                dataset.feature_names = feature_names();
                std::ostringstream cell_rows;
                for (int i = 0; i < config.n_graphs; ++i) {
                    CensorshipPlan plan;
                    plan.strategy = strategy;
                    plan.gamma = gamma;
                    plan.icm_transmission_p = config.icm_p;
                    plan.icm_seed_fraction = config.icm_seed_fraction;
                    plan.rng_seed = seed_for({"censor", strat, gs, std::to_string(i)});
                    CensorshipResult cr = censor(base_graphs[i], plan);
                    if (config.write_graphs) {
                        const fs::path dir = out / "censored" / (strat + "_g" + gs);
                        fs::create_directories(dir);
                        const std::string stem = (dir / graph_file_name(i)).string();
                        AtomicFile ef(stem + ".edges");
                        write_edge_list(ef.stream(), cr.censored_graph);
                        ef.commit();
                        write_removed_manifest(stem + ".removed", base_graphs[i],
                                               cr.removed_edges);
                    }
                    const FeatureVector fc = extract_features(cr.censored_graph);
                    write_feature_row(cell_rows, graph_file_name(i), strat, gs, fc, 1);

                    LabeledRow base_row{{base_features[i].values.begin(),
                                         base_features[i].values.end()},
                                        0};
                    LabeledRow cens_row{{fc.values.begin(), fc.values.end()}, 1};
                    dataset.rows.push_back(std::move(base_row));
                    dataset.rows.push_back(std::move(cens_row));
                }

                const CvResult cv = repeated_stratified_cv(
                    dataset, config.folds, config.repeats, config.svm_C, config.svm_g,
                    seed_for({"cv", strat, gs}));
                std::vector<double> accs;
                for (const FoldAccuracy& f : cv.folds) {
                    report.records.push_back({strat, gamma, f.repeat_index, f.fold_index,
                                              f.accuracy});
                    accs.push_back(f.accuracy);
                }
                const MeanCi agg = mean_ci(accs);
                double ss = 0.0;
                for (double a : accs) ss += (a - agg.mean) * (a - agg.mean);
                const double sd = accs.size() > 1 ? std::sqrt(ss / (accs.size() - 1)) : 0.0;
                report.aggregates.push_back({strat, gamma, agg.mean, sd});

                if (config.run_feature_selection) {
                    const std::vector<std::string> sel = greedy_forward_selection(
                        dataset, config.folds, config.svm_C, config.svm_g,
                        seed_for({"fs", strat, gs}));
                    selection_rows << strat << "," << gs << ",";
                    for (std::size_t s = 0; s < sel.size(); ++s)
                        selection_rows << (s ? ";" : "") << sel[s];
                    selection_rows << "\n";
                }
                feature_rows << cell_rows.str();
            } catch (const std::exception& ex) {
                report.aborted_cells.push_back(strat + " " + gs + ": " + ex.what());
            }
        }
    }

    {
        AtomicFile f((out / "features.csv").string());
        f.stream() << "graph_id,strategy,gamma";
        for (const std::string& name : feature_names()) f.stream() << "," << name;
        f.stream() << ",label\n" << feature_rows.str();
        f.commit();
    }
    {
        AtomicFile f((out / "results.csv").string());
        f.stream() << "strategy,gamma,repeat,fold,accuracy\n";
        for (const CellRecord& r : report.records)
            f.stream() << r.strategy << "," << format_gamma(r.gamma) << "," << r.repeat_index
                       << "," << r.fold_index << "," << format_double(r.accuracy) << "\n";
        f.commit();
    }
    if (config.run_feature_selection) {
        AtomicFile f((out / "selected_features.txt").string());
        f.stream() << selection_rows.str();
        f.commit();
    }
    {
        AtomicFile f((out / "manifest.txt").string());
        auto& os = f.stream();
        os << "n_graphs=" << config.n_graphs << "\nn_nodes=" << config.n_nodes
           << "\nalpha=" << format_double(config.alpha) << "\ngammas=";
        for (std::size_t i = 0; i < config.gammas.size(); ++i)
            os << (i ? ";" : "") << format_gamma(config.gammas[i]);
        os << "\nstrategies=";
        for (std::size_t i = 0; i < config.strategies.size(); ++i)
            os << (i ? ";" : "") << to_string(config.strategies[i]);
        os << "\nicm_p=" << format_double(config.icm_p)
           << "\nicm_seed_fraction=" << format_double(config.icm_seed_fraction)
           << "\nsvm_C=" << format_double(config.svm_C)
           << "\nsvm_g=" << format_double(config.svm_g) << "\nfolds=" << config.folds
           << "\nrepeats=" << config.repeats << "\nmaster_seed=" << config.master_seed
           << "\n";
        for (const std::string& line : report.aborted_cells) os << "aborted_cell=" << line << "\n";
        os << "# seed ledger\n";
        for (const std::string& line : seed_ledger) os << line << "\n";
        f.commit();
    }
    return report;
}

FeatureTable read_feature_table(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    FeatureTable t;
    std::string line;
    std::getline(is, line);
    const auto header = split_csv_line(line);
    if (header.size() < 5 || header.front() != "graph_id" || header.back() != "label")
        throw std::runtime_error("unrecognized features.csv header in " + path);
    t.names.assign(header.begin() + 3, header.end() - 1);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cols = split_csv_line(line);
        std::vector<double> vals;
        for (std::size_t c = 3; c + 1 < cols.size(); ++c) vals.push_back(std::stod(cols[c]));
        if (cols[1] == "none")
            t.base.push_back(std::move(vals));
        else
            t.cells[{cols[1], cols[2]}].push_back(std::move(vals));
    }
    return t;
}

LabeledDataset cell_dataset(const FeatureTable& table, const std::string& strategy,
                            const std::string& gamma) {
    LabeledDataset d;
    d.feature_names = table.names;
    for (const auto& row : table.base) d.rows.push_back({row, 0});
    const auto it = table.cells.find({strategy, gamma});
    if (it == table.cells.end())
        throw std::runtime_error("no censored rows for cell " + strategy + " " + gamma);
    for (const auto& row : it->second) d.rows.push_back({row, 1});
    return d;
}

void write_plot_data(const std::string& dir) {
    const fs::path base(dir);

    // Figure 4: accuracy vs gamma per strategy.
    {
        std::ifstream is(base / "results.csv");
        if (!is) throw std::runtime_error("results.csv not found in " + dir);
        std::string line;
        std::getline(is, line);  // header
        std::map<std::pair<std::string, double>, std::vector<double>> cells;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            const auto cols = split_csv_line(line);
            cells[{cols[0], std::stod(cols[1])}].push_back(std::stod(cols[4]));
        }
        AtomicFile f((base / "fig4_accuracy.csv").string());
        f.stream() << "strategy,gamma,mean_accuracy,ci95\n";
        for (const auto& [key, accs] : cells) {
            const MeanCi m = mean_ci(accs);
            f.stream() << key.first << "," << format_gamma(key.second) << ","
                       << format_double(m.mean) << "," << format_double(m.ci95) << "\n";
        }
        f.commit();
    }

    // Figures 2 and 3: feature trends vs gamma per strategy.
    std::ifstream is(base / "features.csv");
    if (!is) throw std::runtime_error("features.csv not found in " + dir);
    std::string line;
    std::getline(is, line);
    const auto header = split_csv_line(line);
    std::map<std::pair<std::string, double>, std::vector<std::vector<double>>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cols = split_csv_line(line);
        std::vector<double> vals;
        for (std::size_t c = 3; c + 1 < cols.size(); ++c) vals.push_back(std::stod(cols[c]));
        rows[{cols[1], std::stod(cols[2])}].push_back(std::move(vals));
    }

    const std::vector<std::string> fig2 = {"assort", "clustering", "avgdeg",
                                           "dia",    "rad",        "betcent"};
    const std::vector<std::string> fig3 = {"in_alpha_fit", "out_alpha_fit",
                                           "in_likelihood_fit", "out_likelihood_fit"};
    auto emit = [&](const std::string& file, const std::vector<std::string>& feats) {
        AtomicFile f((base / file).string());
        f.stream() << "strategy,gamma,feature,mean,ci95\n";
        for (const auto& [key, group] : rows) {
            for (const std::string& feat : feats) {
                const auto it = std::find(header.begin(), header.end(), feat);
                const std::size_t col = static_cast<std::size_t>(it - header.begin()) - 3;
                std::vector<double> xs;
                for (const auto& r : group) xs.push_back(r[col]);
                const MeanCi m = mean_ci(xs);
                f.stream() << key.first << "," << format_gamma(key.second) << "," << feat
                           << "," << format_double(m.mean) << "," << format_double(m.ci95)
                           << "\n";
            }
        }
        f.commit();
    };
    emit("fig2_topological.csv", fig2);
    emit("fig3_powerlaw.csv", fig3);
}

}  // namespace cendet
