// SPDX-License-Identifier: Apache-2.0
#include "gwf/graph_ops.hpp"

namespace gwf {

Matrix map_atom(const Matrix& raw) {
    if (raw.rows() != raw.cols())
        throw shape_error("map_atom expects a square matrix, got " + std::to_string(raw.rows()) +
                          "x" + std::to_string(raw.cols()));
    return raw.cwiseMax(0.0);
}

Vector map_weights(const Vector& raw) {
    if (raw.size() == 0) throw shape_error("map_weights expects a nonempty vector");
    const Vector shifted = raw.array() - raw.maxCoeff();
    const Vector exps = shifted.array().exp();
    return exps / exps.sum();
}

Matrix assemble_cost_const(const Graph& source, const Graph& target,
                           const std::optional<Matrix>& feature_dist, double feature_weight) {
    source.validate();
    target.validate();
    const auto ns = source.size();
    const auto nt = target.size();
    const Vector s = source.adjacency.array().square().matrix() * source.node_dist;
    const Vector t = target.adjacency.array().square().matrix() * target.node_dist;
    Matrix cost = s.replicate(1, nt) + t.transpose().replicate(ns, 1);
    if (feature_dist) {
        if (feature_dist->rows() != ns || feature_dist->cols() != nt)
            throw shape_error("feature_dist shape does not match the graph pair");
        cost += feature_weight * *feature_dist;
    }
    if (!cost.allFinite()) throw numerical_error("cost constant has non-finite entries");
    return cost;
}

double gw_cost(const Graph& source, const Graph& target, const Matrix& cost_const,
               const Coupling& coupling) {
    const auto ns = source.size();
    const auto nt = target.size();
    if (cost_const.rows() != ns || cost_const.cols() != nt)
        throw shape_error("cost_const shape does not match the graph pair");
    if (coupling.plan.rows() != ns || coupling.plan.cols() != nt)
        throw shape_error("coupling shape does not match the graph pair");
    const Matrix cost =
        cost_const - 2.0 * source.adjacency * coupling.plan * target.adjacency.transpose();
    const double value = (cost.array() * coupling.plan.array()).sum();
    return value < 0.0 ? 0.0 : value;
}

Matrix feature_distance(const Matrix& source_features, const Matrix& target_features) {
    if (source_features.cols() != target_features.cols())
        throw shape_error("feature dimensions differ: " + std::to_string(source_features.cols()) +
                          " vs " + std::to_string(target_features.cols()));
    const Vector sn = source_features.rowwise().squaredNorm();
    const Vector tn = target_features.rowwise().squaredNorm();
    Matrix d = sn.replicate(1, target_features.rows()) +
               tn.transpose().replicate(source_features.rows(), 1) -
               2.0 * source_features * target_features.transpose();
    return d.cwiseMax(0.0);
}

}  // namespace gwf
