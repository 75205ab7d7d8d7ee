// SPDX-License-Identifier: Apache-2.0
#include "gwf/train.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <thread>

#include "gwf/adam.hpp"
#include "gwf/graph_ops.hpp"

namespace gwf {

namespace {

void validate_dataset(const std::vector<Graph>& dataset) {
    if (dataset.empty()) throw std::invalid_argument("dataset must not be empty");
    const bool with_features = dataset.front().has_features();
    const int dim = with_features ? dataset.front().feature_dim() : 0;
    for (const Graph& g : dataset) {
        g.validate();
        if (g.has_features() != with_features)
            throw data_error("feature presence is inconsistent across the dataset");
        if (with_features && g.feature_dim() != dim)
            throw data_error("feature dimensions differ across the dataset");
    }
}

std::vector<int> sample_atom_indices(int dataset_size, int count, Rng& rng) {
    std::vector<int> picked(count);
    if (dataset_size >= count) {
        std::vector<int> pool(dataset_size);
        for (int i = 0; i < dataset_size; ++i) pool[i] = i;
        for (int k = 0; k < count; ++k) {
            const int j = k + static_cast<int>(rng.uniform_int(dataset_size - k));
            std::swap(pool[k], pool[j]);
            picked[k] = pool[k];
        }
    } else {
        for (int k = 0; k < count; ++k)
            picked[k] = static_cast<int>(rng.uniform_int(dataset_size));
    }
    return picked;
}

GwfModel init_model(const std::vector<Graph>& dataset, const TrainConfig& config, Rng& rng) {
    GwfModel model;
    model.config = config;
    const std::vector<int> picked =
        sample_atom_indices(static_cast<int>(dataset.size()), config.num_atoms, rng);
    model.atoms.reserve(config.num_atoms);
    for (int idx : picked) {
        AtomParams atom;
        atom.raw = dataset[idx].adjacency;
        atom.raw_features = dataset[idx].features;
        model.atoms.push_back(std::move(atom));
    }
    model.embeddings.resize(dataset.size());
    for (auto& e : model.embeddings) {
        e.raw = Vector::NullaryExpr(config.num_atoms,
                                    [&rng](Eigen::Index) { return 0.01 * rng.normal(); });
    }
    return model;
}

std::vector<int> shuffled_indices(int n, Rng& rng) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.uniform_int(i + 1))]);
    return order;
}

struct ClassifierAdam {
    AdamState w1, b1, w2, b2;
};

struct GraphStep {
    Gradients grads;
    ClassifierGradients clf_grads;
    double total_loss = 0.0;
    bool labeled = false;
};

// forward/backward for one graph, plus the label term when present
GraphStep evaluate_graph(const GwfModel& model, const std::vector<Graph>& dataset, int i,
                         const SolverConfig& solver, const std::map<int, int>& labels,
                         double beta, const Classifier* clf) {
    GraphStep step;
    const ForwardArtifacts art = forward_loss(model, i, dataset[i], solver);
    step.grads = backward(model, dataset[i], art);
    step.total_loss = art.loss;
    const auto it = labels.find(i);
    if (clf != nullptr && it != labels.end() && beta > 0.0) {
        step.labeled = true;
        const double ce =
            classifier_backward(*clf, model.embeddings[i].raw, it->second, step.clf_grads);
        step.total_loss += beta * ce;
        step.grads.embedding += beta * step.clf_grads.input;
    }
    return step;
}

struct Optimizer {
    std::vector<AdamState> atoms;
    std::vector<AdamState> atom_features;
    std::vector<AdamState> embeddings;
    ClassifierAdam clf;

    static Optimizer for_model(const GwfModel& model, const Classifier& clf) {
        Optimizer opt;
        for (const AtomParams& a : model.atoms) {
            opt.atoms.push_back(AdamState::for_shape(a.raw.rows(), a.raw.cols()));
            if (a.raw_features)
                opt.atom_features.push_back(
                    AdamState::for_shape(a.raw_features->rows(), a.raw_features->cols()));
        }
        for (const EmbeddingParams& e : model.embeddings)
            opt.embeddings.push_back(AdamState::for_shape(e.raw.size(), 1));
        opt.clf.w1 = AdamState::for_shape(clf.w1.rows(), clf.w1.cols());
        opt.clf.b1 = AdamState::for_shape(clf.b1.size(), 1);
        opt.clf.w2 = AdamState::for_shape(clf.w2.rows(), clf.w2.cols());
        opt.clf.b2 = AdamState::for_shape(clf.b2.size(), 1);
        return opt;
    }
};

void apply_atom_updates(GwfModel& model, const Gradients& grads, Optimizer& opt, double lr) {
    for (int k = 0; k < model.num_atoms(); ++k) {
        adam_step(model.atoms[k].raw, grads.atoms[k], opt.atoms[k], lr);
        if (model.atoms[k].raw_features)
            adam_step(*model.atoms[k].raw_features, grads.atom_features[k], opt.atom_features[k],
                      lr);
    }
}

void apply_classifier_update(Classifier& clf, const ClassifierGradients& grads, double beta,
                             ClassifierAdam& opt, double lr) {
    Matrix gw1 = beta * grads.w1;
    Vector gb1 = beta * grads.b1;
    Matrix gw2 = beta * grads.w2;
    Vector gb2 = beta * grads.b2;
    adam_step(clf.w1, gw1, opt.w1, lr);
    adam_step(clf.b1, gb1, opt.b1, lr);
    adam_step(clf.w2, gw2, opt.w2, lr);
    adam_step(clf.b2, gb2, opt.b2, lr);
}

SemiTrainResult train_impl(const std::vector<Graph>& dataset, const std::map<int, int>& labels,
                           const TrainConfig& config) {
    config.validate();
    validate_dataset(dataset);
    int num_classes = 2;
    for (const auto& [idx, label] : labels) {
        if (idx < 0 || idx >= static_cast<int>(dataset.size()))
            throw std::invalid_argument("label refers to unknown graph index " +
                                        std::to_string(idx));
        if (label < 0) throw std::invalid_argument("class labels must be nonnegative");
        num_classes = std::max(num_classes, label + 1);
    }

    Rng rng(config.rng_seed);
    GwfModel model = init_model(dataset, config, rng);
    // separate stream so the label path never perturbs the unsupervised run
    Rng clf_rng(config.rng_seed ^ 0x5eed5eed5eed5eedULL);
    Classifier clf = Classifier::init(config.num_atoms, num_classes, 16, clf_rng);
    Optimizer opt = Optimizer::for_model(model, clf);

    const SolverConfig solver = config.solver_config();
    const double beta = config.semi_weight;
    const double lr = config.learning_rate;
    const int count = static_cast<int>(dataset.size());

    TrainReport report;
    report.config = config;
    report.final_graph_losses.assign(count, 0.0);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const auto started = std::chrono::steady_clock::now();
        const std::vector<int> order = shuffled_indices(count, rng);
        double loss_sum = 0.0;

        if (!config.parallel_epoch) {
            for (int i : order) {
                const GraphStep step =
                    evaluate_graph(model, dataset, i, solver, labels, beta, &clf);
                apply_atom_updates(model, step.grads, opt, lr);
                adam_step(model.embeddings[i].raw, step.grads.embedding, opt.embeddings[i], lr);
                if (step.labeled) apply_classifier_update(clf, step.clf_grads, beta, opt.clf, lr);
                loss_sum += step.total_loss;
                report.final_graph_losses[i] = step.total_loss;
            }
        } else {
            // gradients against a fixed snapshot, then one averaged update
            std::vector<GraphStep> steps(count);
            const int workers =
                std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
            std::atomic<int> next{0};
            std::vector<std::future<void>> futures;
            for (int w = 0; w < workers; ++w) {
                futures.push_back(std::async(std::launch::async, [&]() {
                    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                        steps[i] = evaluate_graph(model, dataset, i, solver, labels, beta, &clf);
                }));
            }
            for (auto& f : futures) f.get();

            Gradients mean_grads;
            mean_grads.atoms.assign(model.num_atoms(), Matrix());
            if (model.has_features()) mean_grads.atom_features.assign(model.num_atoms(), Matrix());
            for (int k = 0; k < model.num_atoms(); ++k) {
                mean_grads.atoms[k] = Matrix::Zero(model.atoms[k].raw.rows(),
                                                   model.atoms[k].raw.cols());
                if (model.has_features())
                    mean_grads.atom_features[k] = Matrix::Zero(
                        model.atoms[k].raw_features->rows(), model.atoms[k].raw_features->cols());
            }
            ClassifierGradients clf_sum;
            clf_sum.w1 = Matrix::Zero(clf.w1.rows(), clf.w1.cols());
            clf_sum.b1 = Vector::Zero(clf.b1.size());
            clf_sum.w2 = Matrix::Zero(clf.w2.rows(), clf.w2.cols());
            clf_sum.b2 = Vector::Zero(clf.b2.size());
            int labeled_count = 0;

            for (int i = 0; i < count; ++i) {
                const GraphStep& step = steps[i];
                for (int k = 0; k < model.num_atoms(); ++k) {
                    mean_grads.atoms[k] += step.grads.atoms[k];
                    if (model.has_features())
                        mean_grads.atom_features[k] += step.grads.atom_features[k];
                }
                if (step.labeled) {
                    clf_sum.w1 += step.clf_grads.w1;
                    clf_sum.b1 += step.clf_grads.b1;
                    clf_sum.w2 += step.clf_grads.w2;
                    clf_sum.b2 += step.clf_grads.b2;
                    ++labeled_count;
                }
                loss_sum += step.total_loss;
                report.final_graph_losses[i] = step.total_loss;
            }
            for (int k = 0; k < model.num_atoms(); ++k) {
                mean_grads.atoms[k] /= count;
                if (model.has_features()) mean_grads.atom_features[k] /= count;
            }
            apply_atom_updates(model, mean_grads, opt, lr);
            for (int i = 0; i < count; ++i)
                adam_step(model.embeddings[i].raw, steps[i].grads.embedding, opt.embeddings[i],
                          lr);
            if (labeled_count > 0) {
                clf_sum.w1 /= labeled_count;
                clf_sum.b1 /= labeled_count;
                clf_sum.w2 /= labeled_count;
                clf_sum.b2 /= labeled_count;
                apply_classifier_update(clf, clf_sum, beta, opt.clf, lr);
            }
        }

        const auto elapsed = std::chrono::steady_clock::now() - started;
        report.epoch_mean_loss.push_back(loss_sum / count);
        report.epoch_seconds.push_back(std::chrono::duration<double>(elapsed).count());
    }

    return SemiTrainResult{std::move(model), std::move(clf), std::move(report)};
}

}  // namespace

void TrainConfig::validate() const {
    if (num_atoms < 1) throw std::invalid_argument("num_atoms must be at least 1");
    if (inner_iters < 1) throw std::invalid_argument("inner_iters must be at least 1");
    if (outer_iters < 1) throw std::invalid_argument("outer_iters must be at least 1");
    if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
    if (learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be positive");
    if (semi_weight < 0.0) throw std::invalid_argument("semi_weight must be nonnegative");
    if (gamma && *gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
}

ForwardArtifacts forward_loss(const GwfModel& model, int graph_index, const Graph& graph) {
    return forward_loss(model, graph_index, graph, model.config.solver_config());
}

ForwardArtifacts forward_loss(const GwfModel& model, int graph_index, const Graph& graph,
                              const SolverConfig& solver) {
    if (graph_index < 0 || graph_index >= model.num_graphs())
        throw std::invalid_argument("graph_index out of range");
    if (model.atoms.empty()) throw std::invalid_argument("model has no atoms");
    graph.validate();
    if (model.has_features() != graph.has_features())
        throw std::invalid_argument(
            "model atoms and graph must agree on carrying node features");

    std::vector<Graph> mapped;
    mapped.reserve(model.atoms.size());
    for (const AtomParams& atom : model.atoms) {
        atom.validate();
        mapped.push_back(Graph::with_uniform_dist(map_atom(atom.raw), atom.raw_features));
    }
    const Vector lambda = map_weights(model.embeddings[graph_index].raw);

    BarycenterState bary = gwb(mapped, lambda, BarycenterState(graph),
                               model.config.outer_iters, solver);

    std::optional<Matrix> dist;
    if (graph.has_features()) dist = feature_distance(*bary.features, *graph.features);

    const Graph bary_graph(bary.adjacency, bary.node_dist, bary.features);
    SolverResult outer = gwd(bary_graph, graph, solver, dist);

    ForwardArtifacts art;
    art.loss = outer.sq_discrepancy;
    art.barycenter = std::move(bary);
    art.outer_coupling = std::move(outer.coupling);
    art.feature_dist = std::move(dist);
    art.graph_index = graph_index;
    return art;
}

double frozen_coupling_loss(const std::vector<AtomParams>& atoms, const Vector& embedding_raw,
                            const std::vector<Coupling>& atom_couplings,
                            const Coupling& outer_coupling, const Graph& graph,
                            const Vector& barycenter_dist) {
    if (atoms.size() != atom_couplings.size())
        throw std::invalid_argument("atom count and coupling count differ");
    const Vector lambda = map_weights(embedding_raw);
    const int n_b = static_cast<int>(barycenter_dist.size());
    const bool with_features = !atoms.empty() && atoms.front().raw_features.has_value();

    Matrix accum = Matrix::Zero(n_b, n_b);
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const Matrix mapped = map_atom(atoms[k].raw);
        accum.noalias() +=
            lambda[k] * atom_couplings[k].plan * mapped * atom_couplings[k].plan.transpose();
    }
    const Matrix bary = accum.cwiseQuotient(barycenter_dist * barycenter_dist.transpose());

    std::optional<Matrix> dist;
    std::optional<Matrix> bary_features;
    if (with_features) {
        Matrix feat = Matrix::Zero(n_b, atoms.front().raw_features->cols());
        for (std::size_t k = 0; k < atoms.size(); ++k)
            feat.noalias() += lambda[k] * atom_couplings[k].plan * *atoms[k].raw_features;
        bary_features = feat.array().colwise() / barycenter_dist.array();
        dist = feature_distance(*bary_features, *graph.features);
    }

    const Graph bary_graph(bary, barycenter_dist, bary_features);
    const Matrix cost_const = assemble_cost_const(bary_graph, graph, dist);
    const Matrix cost =
        cost_const - 2.0 * bary * outer_coupling.plan * graph.adjacency.transpose();
    return (cost.array() * outer_coupling.plan.array()).sum();
}

Gradients backward(const GwfModel& model, const Graph& graph, const ForwardArtifacts& artifacts) {
    const int num_atoms = model.num_atoms();
    if (artifacts.graph_index < 0 || artifacts.graph_index >= model.num_graphs())
        throw std::invalid_argument("artifacts refer to an unknown graph index");
    if (static_cast<int>(artifacts.barycenter.atom_couplings.size()) != num_atoms)
        throw std::invalid_argument("artifacts do not match the model's atom count");
    const bool with_features = model.has_features();
    if (with_features != artifacts.barycenter.features.has_value())
        throw std::invalid_argument("artifacts and model disagree on node features");

    const BarycenterState& bary = artifacts.barycenter;
    const Vector& mu_b = bary.node_dist;
    const Matrix& plan = artifacts.outer_coupling.plan;
    const Vector lambda = map_weights(model.embeddings[artifacts.graph_index].raw);
    const Vector row_mass = plan.rowwise().sum();

    // d loss / d B, then back through the rank-one normalization
    const Matrix inv_mass = (mu_b * mu_b.transpose()).cwiseInverse();
    const Matrix grad_bary = 2.0 * (row_mass * mu_b.transpose()).cwiseProduct(bary.adjacency) -
                             2.0 * plan * graph.adjacency * plan.transpose();
    const Matrix grad_accum = grad_bary.cwiseProduct(inv_mass);

    Gradients grads;
    grads.atoms.resize(num_atoms);
    Vector grad_lambda = Vector::Zero(num_atoms);
    for (int k = 0; k < num_atoms; ++k) {
        const Matrix& tk = bary.atom_couplings[k].plan;
        if (tk.rows() != mu_b.size() || tk.cols() != model.atoms[k].raw.rows())
            throw std::invalid_argument("artifact coupling shape does not match atom " +
                                        std::to_string(k));
        const Matrix inner = tk.transpose() * grad_accum * tk;
        const Matrix mapped = map_atom(model.atoms[k].raw);
        grad_lambda[k] = inner.cwiseProduct(mapped).sum();
        // subgradient 1 at exactly 0 so warm-started zero edges stay trainable
        grads.atoms[k] =
            lambda[k] * inner.cwiseProduct((model.atoms[k].raw.array() >= 0.0).cast<double>().matrix());
    }

    if (with_features) {
        const Matrix& bary_feat = *bary.features;
        const Matrix grad_feat = 2.0 * bary_feat.cwiseProduct(row_mass.replicate(1, bary_feat.cols())) -
                                 2.0 * plan * *graph.features;
        const Matrix grad_feat_accum = grad_feat.array().colwise() / mu_b.array();
        grads.atom_features.resize(num_atoms);
        for (int k = 0; k < num_atoms; ++k) {
            const Matrix& tk = bary.atom_couplings[k].plan;
            grads.atom_features[k] = lambda[k] * tk.transpose() * grad_feat_accum;
            grad_lambda[k] +=
                (tk.transpose() * grad_feat_accum).cwiseProduct(*model.atoms[k].raw_features).sum();
        }
    }

    grads.embedding =
        (lambda.array() * (grad_lambda.array() - lambda.dot(grad_lambda))).matrix();
    return grads;
}

TrainResult train(const std::vector<Graph>& dataset, const TrainConfig& config) {
    SemiTrainResult r = train_impl(dataset, {}, config);
    return TrainResult{std::move(r.model), std::move(r.report)};
}

SemiTrainResult train_semisupervised(const std::vector<Graph>& dataset,
                                     const std::map<int, int>& labels,
                                     const TrainConfig& config) {
    return train_impl(dataset, labels, config);
}

}  // namespace gwf
