// SPDX-License-Identifier: Apache-2.0
#include "gwf/generators.hpp"

#include <numeric>

namespace gwf {

Graph generate_ba(int n, int m, bool directed, std::uint64_t seed) {
    if (m < 1 || m >= n)
        throw std::invalid_argument("generate_ba requires 1 <= m < n");
    Rng rng(seed);
    Matrix adj = Matrix::Zero(n, n);
    const int core = m + 1;
    for (int i = 0; i < core; ++i)
        for (int j = 0; j < core; ++j)
            if (i != j) adj(i, j) = 1.0;

    std::vector<double> weight(n, 0.0);
    std::vector<int> candidates;
    candidates.reserve(n);
    for (int u = core; u < n; ++u) {
        candidates.clear();
        for (int v = 0; v < u; ++v) candidates.push_back(v);
        // m distinct targets, drawn sequentially with probability (deg + 1)
        for (int pick = 0; pick < m; ++pick) {
            double total = 0.0;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                const int v = candidates[c];
                const double degree = directed ? adj.col(v).head(u).sum()   // in-degree
                                               : adj.row(v).head(u).sum();
                weight[c] = degree + 1.0;
                total += weight[c];
            }
            double target = rng.uniform01() * total;
            std::size_t chosen = candidates.size() - 1;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                target -= weight[c];
                if (target <= 0.0) {
                    chosen = c;
                    break;
                }
            }
            const int v = candidates[chosen];
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(chosen));
            adj(u, v) = 1.0;
            if (!directed) adj(v, u) = 1.0;
        }
    }
    return Graph::with_uniform_dist(std::move(adj));
}

Graph generate_sbm(int n, const std::vector<int>& block_sizes, double p_in, double p_out,
                   std::uint64_t seed) {
    if (block_sizes.empty()) throw std::invalid_argument("block_sizes must not be empty");
    if (std::accumulate(block_sizes.begin(), block_sizes.end(), 0) != n)
        throw std::invalid_argument("block sizes must sum to n");
    for (int s : block_sizes)
        if (s < 1) throw std::invalid_argument("block sizes must be positive");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw std::invalid_argument("edge probabilities must lie in [0, 1]");

    std::vector<int> block_of(n);
    int node = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b)
        for (int s = 0; s < block_sizes[b]; ++s) block_of[node++] = static_cast<int>(b);

    Rng rng(seed);
    Matrix adj = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double p = block_of[i] == block_of[j] ? p_in : p_out;
            if (rng.uniform01() < p) adj(i, j) = adj(j, i) = 1.0;
        }
    }
    return Graph::with_uniform_dist(std::move(adj));
}

Graph symmetrize(const Graph& g) {
    Graph out = g;
    out.adjacency = g.adjacency + g.adjacency.transpose();
    return out;
}

}  // namespace gwf
