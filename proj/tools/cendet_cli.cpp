#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cendet/censor.hpp"
#include "cendet/features.hpp"
#include "cendet/learn.hpp"
#include "cendet/netgen.hpp"
#include "cendet/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cendet;

namespace {

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--graphs", cfg.n_graphs, "Number of base graphs");
    cmd->add_option("--nodes", cfg.n_nodes, "Nodes per graph");
    cmd->add_option("--alpha", cfg.alpha, "Power-law exponent");
    cmd->add_option("--gammas", cfg.gammas, "Censorship fractions");
    cmd->add_option("--icm-p", cfg.icm_p, "ICM transmission probability");
    cmd->add_option("--seed-fraction", cfg.icm_seed_fraction, "ICM seed node fraction");
    cmd->add_option("--svm-c", cfg.svm_C, "SVM complexity C");
    cmd->add_option("--svm-g", cfg.svm_g, "RBF kernel gamma");
    cmd->add_option("--folds", cfg.folds, "Cross-validation folds");
    cmd->add_option("--repeats", cfg.repeats, "Cross-validation repeats");
    cmd->add_option("--seed", cfg.master_seed, "Master seed");
    cmd->add_option("--out", cfg.out_dir, "Output directory");
    cmd->add_flag("--no-graph-files,!--graph-files", cfg.write_graphs,
                  "Skip writing per-graph edge lists")
        ->default_val(true);
    cmd->add_option("--strategy", [&cfg](const std::vector<std::string>& vals) {
        cfg.strategies.clear();
        for (const auto& v : vals) cfg.strategies.push_back(censor_strategy_from_string(v));
        return true;
    }, "Censorship strategies (uniform, icm)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reply-graph censorship simulation and detection pipeline"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key=value per line)");
    app.allow_config_extras(true);

    ExperimentConfig cfg;

    // generate: write seeded configuration-model graphs.
    auto* gen = app.add_subcommand("generate", "Generate reply-graphs");
    int gen_count = 1;
    std::string gen_out = "graphs";
    gen->add_option("--graphs", gen_count, "Number of graphs");
    gen->add_option("--nodes", cfg.n_nodes, "Nodes per graph");
    gen->add_option("--alpha", cfg.alpha, "Power-law exponent");
    gen->add_option("--seed", cfg.master_seed, "Master seed");
    gen->add_option("--out", gen_out, "Output directory");

    // censor: apply a censorship plan to one edge-list file.
    auto* cen = app.add_subcommand("censor", "Censor a reply-graph edge list");
    std::string cen_in, cen_out = "censored.edges", cen_strategy = "uniform";
    double cen_gamma = 0.1;
    cen->add_option("--in", cen_in, "Input edge-list file")->required();
    cen->add_option("--out", cen_out, "Output edge-list file");
    cen->add_option("--strategy", cen_strategy, "uniform or icm");
    cen->add_option("--gamma", cen_gamma, "Fraction of edges to remove");
    cen->add_option("--icm-p", cfg.icm_p, "ICM transmission probability");
    cen->add_option("--seed-fraction", cfg.icm_seed_fraction, "ICM seed node fraction");
    cen->add_option("--seed", cfg.master_seed, "RNG seed");

    // featurize: one CSV row per input edge-list file.
    auto* feat = app.add_subcommand("featurize", "Extract feature vectors");
    std::vector<std::string> feat_in;
    std::string feat_out = "features.csv";
    feat->add_option("--in", feat_in, "Input edge-list files")->required();
    feat->add_option("--out", feat_out, "Output CSV");

    // evaluate: repeated stratified CV over a pipeline features.csv.
    auto* eval = app.add_subcommand("evaluate", "Cross-validate censorship detection");
    std::string eval_features = "features.csv", eval_out = "results.csv";
    eval->add_option("--features", eval_features, "features.csv from the pipeline");
    eval->add_option("--out", eval_out, "Output results CSV");
    eval->add_option("--svm-c", cfg.svm_C, "SVM complexity C");
    eval->add_option("--svm-g", cfg.svm_g, "RBF kernel gamma");
    eval->add_option("--folds", cfg.folds, "Folds");
    eval->add_option("--repeats", cfg.repeats, "Repeats");
    eval->add_option("--seed", cfg.master_seed, "Master seed");

    // select-features: greedy forward search per cell.
    auto* sel = app.add_subcommand("select-features", "Greedy forward feature selection");
    std::string sel_features = "features.csv", sel_out = "selected_features.txt";
    sel->add_option("--features", sel_features, "features.csv from the pipeline");
    sel->add_option("--out", sel_out, "Output file");
    sel->add_option("--svm-c", cfg.svm_C, "SVM complexity C");
    sel->add_option("--svm-g", cfg.svm_g, "RBF kernel gamma");
    sel->add_option("--folds", cfg.folds, "Folds");
    sel->add_option("--seed", cfg.master_seed, "Master seed");

    auto* runall = app.add_subcommand("run-all", "Run the full experiment");
    add_experiment_flags(runall, cfg);

    auto* plot = app.add_subcommand("plot-data", "Emit plot-ready CSVs for Figs. 2-4");
    std::string plot_dir = "out";
    plot->add_option("--out", plot_dir, "Experiment output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            fs::create_directories(gen_out);
            for (int i = 0; i < gen_count; ++i) {
                GenerationConfig gc{cfg.n_nodes, cfg.alpha,
                                    derive_seed(cfg.master_seed, {"graph", std::to_string(i)})};
                CmResult cm = generate_reply_graph(gc);
                char name[32];
                std::snprintf(name, sizeof(name), "graph_%03d", i);
                write_edge_list_file((fs::path(gen_out) / (std::string(name) + ".edges")).string(),
                                     cm.graph);
                std::ofstream meta(fs::path(gen_out) / (std::string(name) + ".meta"));
                meta << "n=" << gc.n << "\nalpha=" << cfg.alpha << "\nseed=" << gc.seed
                     << "\nresidual_self_loops_deleted=" << cm.residual_self_loops_deleted
                     << "\n";
            }
        } else if (cen->parsed()) {
            const DirectedMultigraph g = read_edge_list_file(cen_in);
            CensorshipPlan plan;
            plan.strategy = censor_strategy_from_string(cen_strategy);
            plan.gamma = cen_gamma;
            plan.icm_transmission_p = cfg.icm_p;
            plan.icm_seed_fraction = cfg.icm_seed_fraction;
            plan.rng_seed = cfg.master_seed;
            const CensorshipResult r = censor(g, plan);
            write_edge_list_file(cen_out, r.censored_graph);
            write_removed_manifest(cen_out + ".removed", g, r.removed_edges);
            std::cout << "removed " << r.removed_edges.size() << " of " << g.edge_count()
                      << " edges";
            if (plan.strategy == CensorStrategy::icm)
                std::cout << " in " << r.runs_used << " cascade runs";
            std::cout << "\n";
        } else if (feat->parsed()) {
            std::ofstream os(feat_out, std::ios::binary);
            os << "graph_id,strategy,gamma";
            for (const auto& n : feature_names()) os << "," << n;
            os << ",label\n";
            for (const std::string& path : feat_in) {
                const DirectedMultigraph g = read_edge_list_file(path);
                const FeatureVector f = extract_features(g);
                os << fs::path(path).stem().string() << ",none,0";
                char buf[64];
                for (double v : f.values) {
                    std::snprintf(buf, sizeof(buf), "%.12g", v);
                    os << "," << buf;
                }
                os << ",0\n";
            }
        } else if (eval->parsed()) {
            const FeatureTable t = read_feature_table(eval_features);
            std::ofstream os(eval_out, std::ios::binary);
            os << "strategy,gamma,repeat,fold,accuracy\n";
            for (const auto& [key, rows] : t.cells) {
                const LabeledDataset d = cell_dataset(t, key.first, key.second);
                const CvResult cv = repeated_stratified_cv(
                    d, cfg.folds, cfg.repeats, cfg.svm_C, cfg.svm_g,
                    derive_seed(cfg.master_seed, {"cv", key.first, key.second}));
                char buf[64];
                for (const FoldAccuracy& f : cv.folds) {
                    std::snprintf(buf, sizeof(buf), "%.12g", f.accuracy);
                    os << key.first << "," << key.second << "," << f.repeat_index << ","
                       << f.fold_index << "," << buf << "\n";
                }
            }
        } else if (sel->parsed()) {
            const FeatureTable t = read_feature_table(sel_features);
            std::ofstream os(sel_out, std::ios::binary);
            for (const auto& [key, rows] : t.cells) {
                const LabeledDataset d = cell_dataset(t, key.first, key.second);
                const auto names = greedy_forward_selection(
                    d, cfg.folds, cfg.svm_C, cfg.svm_g,
                    derive_seed(cfg.master_seed, {"fs", key.first, key.second}));
                os << key.first << "," << key.second << ",";
                for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ";" : "") << names[i];
                os << "\n";
            }
        } else if (runall->parsed()) {
            const EvalReport report = run_experiment(cfg);
            for (const CellSummary& s : report.aggregates)
                std::cout << s.strategy << " gamma=" << format_gamma(s.gamma)
                          << " mean_accuracy=" << s.mean_accuracy << " (sd " << s.stddev_accuracy
                          << ")\n";
            for (const std::string& a : report.aborted_cells)
                std::cerr << "aborted cell: " << a << "\n";
            if (!report.aborted_cells.empty() && report.aggregates.empty()) return 2;
        } else if (plot->parsed()) {
            write_plot_data(plot_dir);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
