// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "gwf/common.hpp"

namespace gwf {

// A weighted graph: nonnegative adjacency, a probability vector over nodes,
// and optional per-node attribute rows.
struct Graph {
    Matrix adjacency;                 // N x N, entries >= 0
    Vector node_dist;                 // length N, sums to 1
    std::optional<Matrix> features;   // N x D

    Graph() = default;
    Graph(Matrix adj, Vector dist, std::optional<Matrix> feat = std::nullopt)
        : adjacency(std::move(adj)), node_dist(std::move(dist)), features(std::move(feat)) {}

    // Graph with the uniform node distribution 1/N.
    static Graph with_uniform_dist(Matrix adj, std::optional<Matrix> feat = std::nullopt);

    int size() const { return static_cast<int>(adjacency.rows()); }
    bool has_features() const { return features.has_value(); }
    int feature_dim() const { return features ? static_cast<int>(features->cols()) : 0; }

    // Throws shape_error / std::invalid_argument when an invariant is broken.
    void validate() const;
};

// A transport plan between two node distributions. Feasibility is quantified
// through the marginal residuals rather than assumed; which side is exact
// depends on the solver that produced the plan.
struct Coupling {
    Matrix plan;         // N_s x N_t, entries >= 0
    Vector source_dist;  // length N_s
    Vector target_dist;  // length N_t

    double row_marginal_residual() const {
        return (plan * Vector::Ones(plan.cols()) - source_dist).lpNorm<1>();
    }
    double col_marginal_residual() const {
        return (plan.transpose() * Vector::Ones(plan.rows()) - target_dist).lpNorm<1>();
    }
};

// Unconstrained parameters of one atom; mapped to a feasible graph through
// map_atom (and used verbatim for node features).
struct AtomParams {
    Matrix raw;                           // N_k x N_k
    std::optional<Matrix> raw_features;   // N_k x D

    int size() const { return static_cast<int>(raw.rows()); }
    void validate() const;
};

// Unconstrained per-graph embedding; map_weights turns it into simplex weights.
struct EmbeddingParams {
    Vector raw;  // length K
};

}  // namespace gwf
