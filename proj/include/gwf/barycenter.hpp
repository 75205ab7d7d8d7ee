// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "gwf/solvers.hpp"

namespace gwf {

struct BarycenterState {
    Matrix adjacency;                     // N_b x N_b, entries >= 0
    Vector node_dist;                     // length N_b, strictly positive
    std::optional<Matrix> features;       // N_b x D
    std::vector<Coupling> atom_couplings; // K plans, each N_b x N_k

    BarycenterState() = default;
    explicit BarycenterState(const Graph& g)
        : adjacency(g.adjacency), node_dist(g.node_dist), features(g.features) {}
    BarycenterState(Matrix adj, Vector dist, std::optional<Matrix> feat = std::nullopt)
        : adjacency(std::move(adj)), node_dist(std::move(dist)), features(std::move(feat)) {}

    int size() const { return static_cast<int>(adjacency.rows()); }
};

// Alternating barycenter refinement: solve one plan per atom, then rebuild
// the adjacency as
//   B = (1 / (mu_b mu_b^T)) (.) sum_k w_k T_k U_k T_k^T
// and, when the atoms carry node features,
//   F_b = (1 / (mu_b 1^T)) (.) sum_k w_k T_k H_k.
// The barycenter keeps the size of `init` throughout; node_dist must be
// strictly positive. weights lives on the simplex.
BarycenterState gwb(const std::vector<Graph>& atoms, const Vector& weights,
                    BarycenterState init, int outer_iters, const SolverConfig& solver);

}  // namespace gwf
