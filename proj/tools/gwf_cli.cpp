// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: training, embedding export, clustering, the
// barycenter-k-means baseline, solver benchmarking and synthetic datasets.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "gwf/analysis.hpp"
#include "gwf/dataset.hpp"
#include "gwf/generators.hpp"
#include "gwf/graph_ops.hpp"
#include "gwf/model_io.hpp"
#include "gwf/run_config.hpp"
#include "gwf/train.hpp"

namespace fs = std::filesystem;
using namespace gwf;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    if (const fs::path parent = fs::path(path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    return out;
}

std::vector<Graph> maybe_symmetrize(std::vector<Graph> graphs, bool apply) {
    if (apply)
        for (Graph& g : graphs) g = symmetrize(g);
    return graphs;
}

// one label per line, in graph order
std::vector<int> read_label_file(const std::string& path, int expected) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open label file: " + path);
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        labels.push_back(std::stoi(line));
    }
    if (expected >= 0 && static_cast<int>(labels.size()) != expected)
        throw data_error(path + ": expected " + std::to_string(expected) + " labels, found " +
                         std::to_string(labels.size()));
    return labels;
}

// "graph_id,label" lines for the partially labeled case
std::map<int, int> read_partial_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open label file: " + path);
    std::map<int, int> labels;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        int idx = 0, label = 0;
        if (std::sscanf(line.c_str(), "%d , %d", &idx, &label) != 2 &&
            std::sscanf(line.c_str(), "%d %d", &idx, &label) != 2)
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": expected 'graph_id,label'");
        labels[idx] = label;
    }
    return labels;
}

// map arbitrary class ids onto {0, 1} for the two-cluster accuracy
std::vector<int> to_binary_labels(const std::vector<int>& raw) {
    std::map<int, int> remap;
    for (int v : raw) remap.emplace(v, 0);
    if (remap.size() != 2)
        throw std::invalid_argument("accuracy needs exactly two distinct classes, found " +
                                    std::to_string(remap.size()));
    int next = 0;
    for (auto& [value, idx] : remap) idx = next++;
    std::vector<int> out;
    out.reserve(raw.size());
    for (int v : raw) out.push_back(remap[v]);
    return out;
}

void write_embedding_rows(std::ofstream& out, const GwfModel& model,
                          const std::vector<int>* clusters) {
    const int k = model.num_atoms();
    out << "graph_id";
    if (clusters) out << ",cluster";
    for (int j = 1; j <= k; ++j) out << ",z_" << j;
    for (int j = 1; j <= k; ++j) out << ",lambda_" << j;
    out << "\n";
    for (int i = 0; i < model.num_graphs(); ++i) {
        const Vector& z = model.embeddings[i].raw;
        const Vector lambda = map_weights(z);
        out << i;
        if (clusters) out << "," << (*clusters)[i];
        for (int j = 0; j < k; ++j) out << "," << fmt(z[j]);
        for (int j = 0; j < k; ++j) out << "," << fmt(lambda[j]);
        out << "\n";
    }
}

struct TrainArgs {
    std::string data_dir;
    std::string name;
    std::string out_path;
    std::string labels_path;
    RunConfig run;
    bool gamma_set = false;
    bool beta_set = false;
};

int run_train(TrainArgs& args) {
    Dataset dataset = load_tudataset(args.data_dir, args.name);
    std::vector<Graph> graphs = maybe_symmetrize(dataset.graphs, args.run.symmetrize);

    args.run.dataset_dir = args.data_dir;
    args.run.dataset_name = args.name;
    const fs::path out_dir = fs::path(args.out_path).parent_path();
    args.run.output_dir = out_dir.string();

    std::map<int, int> labels;
    if (!args.labels_path.empty()) {
        labels = read_partial_labels(args.labels_path);
        if (!args.beta_set) args.run.train.semi_weight = 0.5;
    }
    args.run.validate();

    TrainReport report;
    GwfModel model;
    if (labels.empty()) {
        TrainResult result = train(graphs, args.run.train);
        model = std::move(result.model);
        report = std::move(result.report);
    } else {
        SemiTrainResult result = train_semisupervised(graphs, labels, args.run.train);
        model = std::move(result.model);
        report = std::move(result.report);
    }

    if (!out_dir.empty()) fs::create_directories(out_dir);
    save_model(model, args.out_path);
    const fs::path report_path = out_dir / "train_report.csv";
    std::ofstream rep = open_out(report_path.string());
    rep << "epoch,mean_loss,seconds\n";
    for (std::size_t e = 0; e < report.epoch_mean_loss.size(); ++e)
        rep << (e + 1) << "," << fmt(report.epoch_mean_loss[e]) << ","
            << fmt(report.epoch_seconds[e]) << "\n";
    save_run_config(args.run, (out_dir / "run_config.json").string());

    std::cout << "trained " << model.num_atoms() << " atoms on " << graphs.size()
              << " graphs; final mean loss " << fmt(report.epoch_mean_loss.back()) << "\n";
    std::cout << "model: " << args.out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gromov-Wasserstein factorization of graphs"};
    app.require_subcommand(1);

    // ---- train ----
    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "learn atoms and embeddings for a dataset");
    train_cmd->add_option("--data", train_args.data_dir, "dataset directory")->required();
    train_cmd->add_option("--name", train_args.name, "dataset name")->required();
    train_cmd->add_option("--atoms", train_args.run.train.num_atoms, "number of atoms K");
    train_cmd->add_option("--inner", train_args.run.train.inner_iters, "solver steps M");
    train_cmd->add_option("--outer", train_args.run.train.outer_iters, "barycenter rounds L");
    auto* gamma_opt = train_cmd->add_option(
        "--gamma", [&train_args](const CLI::results_t& res) {
            train_args.run.train.gamma = std::stod(res[0]);
            return true;
        },
        "regularization weight (default 0.01 ppa / 1.0 badmm)");
    gamma_opt->type_name("FLOAT");
    std::string solver_name = "ppa";
    train_cmd->add_option("--solver", solver_name, "ppa|badmm")
        ->check(CLI::IsMember({"ppa", "badmm"}));
    train_cmd->add_option("--lr", train_args.run.train.learning_rate, "Adam learning rate");
    train_cmd->add_option("--epochs", train_args.run.train.epochs, "training epochs");
    train_cmd->add_option("--seed", train_args.run.train.rng_seed, "RNG seed");
    auto* beta_opt =
        train_cmd->add_option("--semi-beta", train_args.run.train.semi_weight,
                              "label loss weight (default 0.5 when --labels is given)");
    train_cmd->add_option("--labels", train_args.labels_path,
                          "partial labels file, 'graph_id,label' per line");
    train_cmd->add_flag("--symmetrize", train_args.run.symmetrize, "replace A with A + A^T");
    train_cmd->add_flag("--parallel-epoch", train_args.run.train.parallel_epoch,
                        "snapshot gradients, one averaged update per epoch");
    train_cmd->add_option("--out", train_args.out_path, "output model path (JSON)")->required();

    // ---- embed ----
    std::string model_path, out_path;
    auto* embed_cmd = app.add_subcommand("embed", "export embeddings z and weights lambda");
    embed_cmd->add_option("--model", model_path, "model file")->required();
    embed_cmd->add_option("--out", out_path, "output CSV")->required();

    // ---- cluster ----
    struct {
        std::string model, truth, out;
        int k = 2;
        int restarts = 10;
        std::uint64_t seed = 0;
    } cluster_args;
    auto* cluster_cmd = app.add_subcommand("cluster", "k-means on the learned embeddings");
    cluster_cmd->add_option("--model", cluster_args.model, "model file")->required();
    cluster_cmd->add_option("--k", cluster_args.k, "number of clusters");
    cluster_cmd->add_option("--restarts", cluster_args.restarts, "k-means restarts");
    cluster_cmd->add_option("--truth", cluster_args.truth, "true labels, one per line");
    cluster_cmd->add_option("--seed", cluster_args.seed, "RNG seed");
    cluster_cmd->add_option("--out", cluster_args.out, "output CSV")->required();

    // ---- baseline-gwbkm ----
    struct {
        std::string data, name, truth, out;
        int k = 2;
        int inner = 50;
        int max_iters = 10;
        double gamma = -1.0;
        std::string solver = "ppa";
        std::uint64_t seed = 0;
        bool symmetrize = false;
    } gwbkm_args;
    auto* gwbkm_cmd = app.add_subcommand("baseline-gwbkm", "k-means of graphs via barycenters");
    gwbkm_cmd->add_option("--data", gwbkm_args.data, "dataset directory")->required();
    gwbkm_cmd->add_option("--name", gwbkm_args.name, "dataset name")->required();
    gwbkm_cmd->add_option("--k", gwbkm_args.k, "number of clusters");
    gwbkm_cmd->add_option("--inner", gwbkm_args.inner, "solver steps M");
    gwbkm_cmd->add_option("--gamma", gwbkm_args.gamma, "regularization weight");
    gwbkm_cmd->add_option("--solver", gwbkm_args.solver, "ppa|badmm")
        ->check(CLI::IsMember({"ppa", "badmm"}));
    gwbkm_cmd->add_option("--max-iters", gwbkm_args.max_iters, "assignment rounds");
    gwbkm_cmd->add_option("--seed", gwbkm_args.seed, "RNG seed");
    gwbkm_cmd->add_option("--truth", gwbkm_args.truth, "true labels, one per line");
    gwbkm_cmd->add_flag("--symmetrize", gwbkm_args.symmetrize, "replace A with A + A^T");
    gwbkm_cmd->add_option("--out", gwbkm_args.out, "output CSV")->required();

    // ---- solver-bench ----
    struct {
        int pairs = 20;
        int nodes = 100;
        int ba_m = 2;
        int iters = 200;
        bool directed = false;
        double gamma = -1.0;
        std::string solver = "ppa";
        std::uint64_t seed = 0;
        std::string out;
    } bench_args;
    auto* bench_cmd = app.add_subcommand(
        "solver-bench", "per-step discrepancy statistics on preferential-attachment pairs");
    bench_cmd->add_option("--pairs", bench_args.pairs, "number of graph pairs")->required();
    bench_cmd->add_option("--nodes", bench_args.nodes, "nodes per graph")->required();
    bench_cmd->add_flag("--directed", bench_args.directed,
                        "keep graphs directed (default symmetrizes them)");
    bench_cmd->add_option("--ba-m", bench_args.ba_m, "attachment edges per node")->required();
    bench_cmd->add_option("--iters", bench_args.iters, "solver steps M")->required();
    bench_cmd->add_option("--solver", bench_args.solver, "ppa|badmm")
        ->check(CLI::IsMember({"ppa", "badmm"}));
    bench_cmd->add_option("--gamma", bench_args.gamma, "regularization weight");
    bench_cmd->add_option("--seed", bench_args.seed, "RNG seed")->required();
    bench_cmd->add_option("--out", bench_args.out, "output CSV")->required();

    // ---- synth ----
    struct {
        std::string kind;
        int graphs = 100;
        int nodes = 20;
        double p_in = 0.9;
        double p_out = 0.05;
        double p_single = 0.45;
        int ba_m = 2;
        bool directed = false;
        std::uint64_t seed = 0;
        std::string name;
        std::string out;
    } synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "write synthetic datasets in benchmark layout");
    synth_cmd->add_option("kind", synth_args.kind, "sbm|ba")
        ->required()
        ->check(CLI::IsMember({"sbm", "ba"}));
    synth_cmd->add_option("--graphs", synth_args.graphs, "number of graphs");
    synth_cmd->add_option("--nodes", synth_args.nodes, "nodes per graph (+/- 2)");
    synth_cmd->add_option("--p-in", synth_args.p_in, "sbm: within-block edge probability");
    synth_cmd->add_option("--p-out", synth_args.p_out, "sbm: across-block edge probability");
    synth_cmd->add_option("--p-single", synth_args.p_single,
                          "sbm: edge probability of the single-block class");
    synth_cmd->add_option("--m", synth_args.ba_m, "ba: attachment edges per node");
    synth_cmd->add_flag("--directed", synth_args.directed, "ba: directed variant");
    synth_cmd->add_option("--seed", synth_args.seed, "RNG seed");
    synth_cmd->add_option("--name", synth_args.name, "dataset name (defaults to kind)");
    synth_cmd->add_option("--out", synth_args.out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train_cmd) {
            train_args.run.train.solver =
                solver_name == "ppa" ? SolverKind::ppa : SolverKind::badmm;
            train_args.beta_set = beta_opt->count() > 0;
            return run_train(train_args);
        }

        if (*embed_cmd) {
            const GwfModel model = load_model(model_path);
            std::ofstream out = open_out(out_path);
            write_embedding_rows(out, model, nullptr);
            std::cout << "wrote " << model.num_graphs() << " embeddings to " << out_path << "\n";
            return 0;
        }

        if (*cluster_cmd) {
            const GwfModel model = load_model(cluster_args.model);
            Matrix points(model.num_graphs(), model.num_atoms());
            for (int i = 0; i < model.num_graphs(); ++i)
                points.row(i) = model.embeddings[i].raw.transpose();
            const KMeansResult result = kmeans(points, cluster_args.k, cluster_args.restarts,
                                               100, cluster_args.seed);
            std::ofstream out = open_out(cluster_args.out);
            write_embedding_rows(out, model, &result.labels);
            std::cout << "inertia " << fmt(result.inertia) << "\n";
            if (!cluster_args.truth.empty()) {
                const std::vector<int> truth = to_binary_labels(
                    read_label_file(cluster_args.truth, model.num_graphs()));
                const double acc = clustering_accuracy(truth, result.labels);
                std::cout << "clustering_accuracy " << fmt(acc) << "\n";
            }
            return 0;
        }

        if (*gwbkm_cmd) {
            Dataset dataset = load_tudataset(gwbkm_args.data, gwbkm_args.name);
            const std::vector<Graph> graphs =
                maybe_symmetrize(dataset.graphs, gwbkm_args.symmetrize);
            SolverConfig solver;
            solver.kind = gwbkm_args.solver == "ppa" ? SolverKind::ppa : SolverKind::badmm;
            solver.gamma = gwbkm_args.gamma > 0
                               ? gwbkm_args.gamma
                               : (solver.kind == SolverKind::ppa ? 0.01 : 1.0);
            solver.inner_iters = gwbkm_args.inner;
            const GwbKmResult result = gwb_km(graphs, gwbkm_args.k, solver,
                                              gwbkm_args.max_iters, gwbkm_args.seed);
            std::ofstream out = open_out(gwbkm_args.out);
            out << "graph_id,cluster\n";
            for (std::size_t i = 0; i < result.labels.size(); ++i)
                out << i << "," << result.labels[i] << "\n";
            std::cout << "total within-cluster discrepancy " << fmt(result.total_discrepancy)
                      << " after " << result.iterations << " rounds\n";
            std::vector<int> truth_raw;
            if (!gwbkm_args.truth.empty())
                truth_raw = read_label_file(gwbkm_args.truth, dataset.size());
            else if (dataset.labels)
                truth_raw = *dataset.labels;
            if (!truth_raw.empty()) {
                const double acc =
                    clustering_accuracy(to_binary_labels(truth_raw), result.labels);
                std::cout << "clustering_accuracy " << fmt(acc) << "\n";
            }
            return 0;
        }

        if (*bench_cmd) {
            SolverConfig solver;
            solver.kind = bench_args.solver == "ppa" ? SolverKind::ppa : SolverKind::badmm;
            solver.gamma = bench_args.gamma > 0
                               ? bench_args.gamma
                               : (solver.kind == SolverKind::ppa ? 0.01 : 1.0);
            solver.inner_iters = bench_args.iters;
            std::vector<std::vector<double>> traces;
            for (int p = 0; p < bench_args.pairs; ++p) {
                Graph a = generate_ba(bench_args.nodes, bench_args.ba_m, true,
                                      bench_args.seed + 2 * p);
                Graph b = generate_ba(bench_args.nodes, bench_args.ba_m, true,
                                      bench_args.seed + 2 * p + 1);
                if (!bench_args.directed) {
                    a = symmetrize(a);
                    b = symmetrize(b);
                }
                traces.push_back(gwd(a, b, solver).cost_trace);
            }
            std::ofstream out = open_out(bench_args.out);
            out << "step,mean_sq_gw,std_sq_gw\n";
            for (int s = 0; s <= bench_args.iters; ++s) {
                double mean = 0.0;
                for (const auto& t : traces) mean += t[s];
                mean /= traces.size();
                double var = 0.0;
                for (const auto& t : traces) var += (t[s] - mean) * (t[s] - mean);
                var /= traces.size();
                out << s << "," << fmt(mean) << "," << fmt(std::sqrt(var)) << "\n";
            }
            std::cout << "wrote " << (bench_args.iters + 1) << " steps to " << bench_args.out
                      << "\n";
            return 0;
        }

        if (*synth_cmd) {
            Dataset dataset;
            dataset.name = synth_args.name.empty()
                               ? (synth_args.kind == "sbm" ? "SYNTH_SBM" : "SYNTH_BA")
                               : synth_args.name;
            std::vector<int> labels;
            Rng size_rng(synth_args.seed ^ 0xABCDEF);
            for (int i = 0; i < synth_args.graphs; ++i) {
                const int n = synth_args.nodes - 2 + static_cast<int>(size_rng.uniform_int(5));
                if (synth_args.kind == "sbm") {
                    const bool two_blocks = i % 2 == 0;
                    if (two_blocks) {
                        const int half = n / 2;
                        dataset.graphs.push_back(generate_sbm(
                            n, {half, n - half}, synth_args.p_in, synth_args.p_out,
                            synth_args.seed + 17 * i));
                    } else {
                        dataset.graphs.push_back(generate_sbm(n, {n}, synth_args.p_single, 0.0,
                                                              synth_args.seed + 17 * i));
                    }
                    labels.push_back(two_blocks ? 0 : 1);
                } else {
                    dataset.graphs.push_back(generate_ba(n, synth_args.ba_m,
                                                         synth_args.directed,
                                                         synth_args.seed + 17 * i));
                    labels.push_back(0);
                }
            }
            if (synth_args.kind == "sbm") dataset.labels = std::move(labels);
            write_tudataset(dataset, synth_args.out);
            std::cout << "wrote " << dataset.graphs.size() << " graphs to " << synth_args.out
                      << " as " << dataset.name << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
