// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "gwf/graph.hpp"

namespace gwf {

// Preferential-attachment graph: a complete core on m+1 nodes, then each new
// node attaches to m distinct existing nodes with probability proportional to
// degree + 1 (in-degree for the directed variant, where edges point new ->
// existing). Binary weights, uniform node distribution.
Graph generate_ba(int n, int m, bool directed, std::uint64_t seed);

// Undirected binary block model on n nodes: edge probability p_in within a
// block and p_out across blocks. block_sizes must sum to n.
Graph generate_sbm(int n, const std::vector<int>& block_sizes, double p_in, double p_out,
                   std::uint64_t seed);

// adjacency <- A + A^T; distribution and features unchanged.
Graph symmetrize(const Graph& g);

}  // namespace gwf
