// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gwf/barycenter.hpp"
#include "gwf/classifier.hpp"
#include "gwf/graph.hpp"
#include "gwf/solvers.hpp"

namespace gwf {

struct TrainConfig {
    int num_atoms = 30;                 // K
    int inner_iters = 50;               // M, steps per discrepancy solve
    int outer_iters = 2;                // L, barycenter refinement rounds
    std::optional<double> gamma;        // default depends on solver kind
    double learning_rate = 0.05;
    int epochs = 10;
    SolverKind solver = SolverKind::ppa;
    double semi_weight = 0.0;           // weight of the label loss
    std::uint64_t rng_seed = 0;

    // Compute all gradients of an epoch against a parameter snapshot and
    // apply a single averaged update. Off by default.
    bool parallel_epoch = false;

    double effective_gamma() const {
        if (gamma) return *gamma;
        return solver == SolverKind::ppa ? 0.01 : 1.0;
    }
    SolverConfig solver_config() const {
        SolverConfig c;
        c.kind = solver;
        c.gamma = effective_gamma();
        c.inner_iters = inner_iters;
        return c;
    }
    void validate() const;
};

struct GwfModel {
    std::vector<AtomParams> atoms;         // K entries
    std::vector<EmbeddingParams> embeddings; // one per training graph
    TrainConfig config;

    int num_atoms() const { return static_cast<int>(atoms.size()); }
    int num_graphs() const { return static_cast<int>(embeddings.size()); }
    bool has_features() const { return !atoms.empty() && atoms.front().raw_features.has_value(); }
};

// Everything the forward pass produces for one graph; the couplings it holds
// are what the gradient computation treats as constants.
struct ForwardArtifacts {
    double loss = 0.0;
    BarycenterState barycenter;            // B^(L), T_1..K, F_b
    Coupling outer_coupling;               // plan between barycenter and graph
    std::optional<Matrix> feature_dist;    // D at the returned barycenter
    int graph_index = -1;
};

struct Gradients {
    std::vector<Matrix> atoms;          // d loss / d V_k
    std::vector<Matrix> atom_features;  // d loss / d H_k; empty without features
    Vector embedding;                   // d loss / d z_i
};

struct TrainReport {
    std::vector<double> epoch_mean_loss;
    std::vector<double> epoch_seconds;
    std::vector<double> final_graph_losses;  // per-graph loss from the last epoch
    TrainConfig config;
    // optimizer constants in effect for the run
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
};

struct TrainResult {
    GwfModel model;
    TrainReport report;
};

struct SemiTrainResult {
    GwfModel model;
    Classifier classifier;
    TrainReport report;
};

// Reconstruct the graph as a barycenter of the mapped atoms, solve the final
// transport against the observed graph, and evaluate the squared discrepancy.
ForwardArtifacts forward_loss(const GwfModel& model, int graph_index, const Graph& graph);
ForwardArtifacts forward_loss(const GwfModel& model, int graph_index, const Graph& graph,
                              const SolverConfig& solver);

// The loss as a closed-form function of the parameters with every coupling
// held fixed. forward_loss(...) equals this function evaluated at its own
// couplings; gradients differentiate exactly this expression.
double frozen_coupling_loss(const std::vector<AtomParams>& atoms, const Vector& embedding_raw,
                            const std::vector<Coupling>& atom_couplings,
                            const Coupling& outer_coupling, const Graph& graph,
                            const Vector& barycenter_dist);

// Exact gradients of the frozen-coupling loss with respect to V_k, z_i and,
// when present, H_k.
Gradients backward(const GwfModel& model, const Graph& graph, const ForwardArtifacts& artifacts);

// Stochastic training over the dataset: warm-started atoms, one Adam update
// per graph visit, shuffled order per epoch.
TrainResult train(const std::vector<Graph>& dataset, const TrainConfig& config);

// Joint training with a label loss on the labeled subset; reduces to train()
// when semi_weight is 0 or no labels are given.
SemiTrainResult train_semisupervised(const std::vector<Graph>& dataset,
                                     const std::map<int, int>& labels,
                                     const TrainConfig& config);

}  // namespace gwf
