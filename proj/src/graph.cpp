// SPDX-License-Identifier: Apache-2.0
#include "gwf/graph.hpp"

namespace gwf {

Graph Graph::with_uniform_dist(Matrix adj, std::optional<Matrix> feat) {
    const auto n = adj.rows();
    if (n == 0) throw shape_error("graph must have at least one node");
    return Graph(std::move(adj), Vector::Constant(n, 1.0 / static_cast<double>(n)),
                 std::move(feat));
}

void Graph::validate() const {
    const auto n = adjacency.rows();
    if (n == 0) throw shape_error("graph must have at least one node");
    if (adjacency.cols() != n)
        throw shape_error("adjacency must be square, got " + std::to_string(n) + "x" +
                          std::to_string(adjacency.cols()));
    if ((adjacency.array() < 0.0).any())
        throw std::invalid_argument("adjacency entries must be nonnegative");
    if (node_dist.size() != n)
        throw shape_error("node_dist length " + std::to_string(node_dist.size()) +
                          " does not match node count " + std::to_string(n));
    if ((node_dist.array() < 0.0).any())
        throw std::invalid_argument("node_dist entries must be nonnegative");
    if (std::abs(node_dist.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("node_dist must sum to 1");
    if (features && features->rows() != n)
        throw shape_error("feature rows " + std::to_string(features->rows()) +
                          " do not match node count " + std::to_string(n));
}

void AtomParams::validate() const {
    if (raw.rows() == 0 || raw.rows() != raw.cols())
        throw shape_error("atom parameter matrix must be square and nonempty");
    if (raw_features && raw_features->rows() != raw.rows())
        throw shape_error("atom feature rows do not match atom size");
}

}  // namespace gwf
