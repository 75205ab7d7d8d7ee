// SPDX-License-Identifier: Apache-2.0
#include "gwf/analysis.hpp"

#include <algorithm>
#include <limits>

#include "gwf/graph_ops.hpp"

namespace gwf {

namespace {

std::vector<int> assign_points(const Matrix& points, const Matrix& centers) {
    std::vector<int> labels(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < centers.rows(); ++j) {
            const double d = (points.row(i) - centers.row(j)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(j);
            }
        }
        labels[i] = best;
    }
    return labels;
}

double total_inertia(const Matrix& points, const Matrix& centers, const std::vector<int>& labels) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        total += (points.row(i) - centers.row(labels[i])).squaredNorm();
    return total;
}

Matrix kmeanspp_init(const Matrix& points, int k, Rng& rng) {
    const Eigen::Index count = points.rows();
    Matrix centers(k, points.cols());
    centers.row(0) = points.row(static_cast<Eigen::Index>(rng.uniform_int(count)));
    Vector dist2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int j = 1; j < k; ++j) {
        const double total = dist2.sum();
        Eigen::Index pick;
        if (total <= 0.0) {
            pick = static_cast<Eigen::Index>(rng.uniform_int(count));
        } else {
            double target = rng.uniform01() * total;
            pick = count - 1;
            for (Eigen::Index i = 0; i < count; ++i) {
                target -= dist2[i];
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        centers.row(j) = points.row(pick);
        dist2 = dist2.cwiseMin((points.rowwise() - centers.row(j)).rowwise().squaredNorm());
    }
    return centers;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, int restarts, int max_iters,
                    std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (points.rows() < k)
        throw std::invalid_argument("k exceeds the number of points");
    if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");

    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(r));
        Matrix centers = kmeanspp_init(points, k, rng);
        std::vector<int> labels = assign_points(points, centers);
        std::vector<double> trace;
        for (int it = 0; it < max_iters; ++it) {
            Matrix next = Matrix::Zero(k, points.cols());
            std::vector<int> counts(k, 0);
            for (Eigen::Index i = 0; i < points.rows(); ++i) {
                next.row(labels[i]) += points.row(i);
                ++counts[labels[i]];
            }
            for (int j = 0; j < k; ++j) {
                if (counts[j] > 0) {
                    next.row(j) /= counts[j];
                } else {
                    // reseed an emptied cluster at the point farthest from its center
                    Eigen::Index far = 0;
                    double far_d = -1.0;
                    for (Eigen::Index i = 0; i < points.rows(); ++i) {
                        const double d = (points.row(i) - centers.row(labels[i])).squaredNorm();
                        if (d > far_d) {
                            far_d = d;
                            far = i;
                        }
                    }
                    next.row(j) = points.row(far);
                }
            }
            centers = next;
            std::vector<int> next_labels = assign_points(points, centers);
            trace.push_back(total_inertia(points, centers, next_labels));
            const bool converged = next_labels == labels;
            labels = std::move(next_labels);
            if (converged) break;
        }
        const double inertia = total_inertia(points, centers, labels);
        if (inertia < best.inertia) {
            best.labels = std::move(labels);
            best.centers = std::move(centers);
            best.inertia = inertia;
            best.inertia_trace = std::move(trace);
        }
    }
    return best;
}

double clustering_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("label vectors must have equal length");
    if (truth.empty()) throw std::invalid_argument("label vectors must not be empty");
    int disagreements = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if ((truth[i] != 0 && truth[i] != 1) || (predicted[i] != 0 && predicted[i] != 1))
            throw std::invalid_argument("labels must be binary (0 or 1)");
        disagreements += truth[i] != predicted[i];
    }
    const int n = static_cast<int>(truth.size());
    return 1.0 - static_cast<double>(std::min(disagreements, n - disagreements)) / n;
}

GwbKmResult gwb_km(const std::vector<Graph>& graphs, int k, const SolverConfig& solver,
                   int max_iters, std::uint64_t seed, int bary_outer_iters) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (static_cast<int>(graphs.size()) < k)
        throw std::invalid_argument("fewer graphs than clusters");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    for (const Graph& g : graphs) g.validate();
    const int count = static_cast<int>(graphs.size());

    // seed centers with k distinct observed graphs
    Rng rng(seed);
    std::vector<int> pool(count);
    for (int i = 0; i < count; ++i) pool[i] = i;
    GwbKmResult result;
    for (int j = 0; j < k; ++j) {
        const int pick = j + static_cast<int>(rng.uniform_int(count - j));
        std::swap(pool[j], pool[pick]);
        result.centers.emplace_back(graphs[pool[j]]);
    }

    const bool with_features = graphs.front().has_features();
    std::vector<int> labels(count, -1);

    for (int it = 0; it < max_iters; ++it) {
        // assignment by squared discrepancy to each center
        std::vector<double> assigned_cost(count);
        std::vector<int> next(count);
        double total = 0.0;
        for (int i = 0; i < count; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                const Graph center(result.centers[j].adjacency, result.centers[j].node_dist,
                                   result.centers[j].features);
                std::optional<Matrix> dist;
                if (with_features)
                    dist = feature_distance(*result.centers[j].features, *graphs[i].features);
                const double d = gwd(center, graphs[i], solver, dist).sq_discrepancy;
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            next[i] = best;
            assigned_cost[i] = best_d;
            total += best_d;
        }

        // reseed emptied clusters from the worst-assigned graph
        for (int j = 0; j < k; ++j) {
            if (std::count(next.begin(), next.end(), j) > 0) continue;
            int far = 0;
            double far_d = -1.0;
            for (int i = 0; i < count; ++i) {
                if (assigned_cost[i] > far_d && std::count(next.begin(), next.end(), next[i]) > 1) {
                    far_d = assigned_cost[i];
                    far = i;
                }
            }
            next[far] = j;
            result.centers[j] = BarycenterState(graphs[far]);
        }

        if (it == 0) result.first_total_discrepancy = total;
        result.total_discrepancy = total;
        result.iterations = it + 1;
        if (next == labels) break;
        labels = next;

        // recompute each center as the barycenter of its members
        for (int j = 0; j < k; ++j) {
            std::vector<Graph> members;
            for (int i = 0; i < count; ++i)
                if (labels[i] == j) members.push_back(graphs[i]);
            if (members.empty()) continue;
            const Vector weights =
                Vector::Constant(members.size(), 1.0 / static_cast<double>(members.size()));
            BarycenterState init(result.centers[j].adjacency, result.centers[j].node_dist,
                                 result.centers[j].features);
            result.centers[j] = gwb(members, weights, std::move(init), bary_outer_iters, solver);
        }
    }

    result.labels = std::move(labels);
    return result;
}

}  // namespace gwf
