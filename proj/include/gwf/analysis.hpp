// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "gwf/barycenter.hpp"
#include "gwf/graph.hpp"
#include "gwf/solvers.hpp"

namespace gwf {

struct KMeansResult {
    std::vector<int> labels;           // cluster id per point
    Matrix centers;                    // k x dim
    double inertia = 0.0;              // total squared distance to centers
    std::vector<double> inertia_trace; // after each Lloyd update of the best run
};

// Lloyd's algorithm with k-means++ seeding; best of `restarts` runs by
// inertia. Deterministic for a fixed seed.
KMeansResult kmeans(const Matrix& points, int k, int restarts, int max_iters,
                    std::uint64_t seed);

// Two-cluster agreement, invariant to flipping the predicted labels:
//   1 - min(||y - yhat||_1, ||y - (1 - yhat)||_1) / N.
// Labels must be 0/1.
double clustering_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted);

struct GwbKmResult {
    std::vector<int> labels;
    std::vector<BarycenterState> centers;
    double total_discrepancy = 0.0;        // at the final assignment
    double first_total_discrepancy = 0.0;  // after the initial assignment
    int iterations = 0;
};

// k-means over graphs: assign by squared discrepancy to the centers, then
// recompute each center as the barycenter of its members. Centers keep the
// size of their seed graph; an emptied cluster is reseeded from the graph
// farthest from its current center.
GwbKmResult gwb_km(const std::vector<Graph>& graphs, int k, const SolverConfig& solver,
                   int max_iters, std::uint64_t seed, int bary_outer_iters = 2);

}  // namespace gwf
