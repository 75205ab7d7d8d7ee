// SPDX-License-Identifier: Apache-2.0
#include "gwf/barycenter.hpp"

#include "gwf/graph_ops.hpp"

namespace gwf {

namespace {

void validate_inputs(const std::vector<Graph>& atoms, const Vector& weights,
                     const BarycenterState& init, int outer_iters) {
    if (outer_iters < 0) throw std::invalid_argument("outer_iters must be nonnegative");
    if (atoms.empty()) throw std::invalid_argument("barycenter needs at least one atom");
    if (static_cast<int>(atoms.size()) != weights.size())
        throw shape_error("atom count and weight count differ");
    if ((weights.array() < 0.0).any() || std::abs(weights.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("weights must lie on the simplex");
    if (init.adjacency.rows() == 0 || init.adjacency.rows() != init.adjacency.cols())
        throw shape_error("barycenter init adjacency must be square and nonempty");
    if ((init.adjacency.array() < 0.0).any())
        throw std::invalid_argument("barycenter init adjacency must be nonnegative");
    if (init.node_dist.size() != init.adjacency.rows())
        throw shape_error("barycenter node_dist length does not match adjacency");
    if ((init.node_dist.array() <= 0.0).any())
        throw std::invalid_argument("barycenter node_dist must be strictly positive");

    const bool with_features = atoms.front().has_features();
    int feature_dim = with_features ? atoms.front().feature_dim() : 0;
    for (const Graph& atom : atoms) {
        atom.validate();
        if (atom.has_features() != with_features)
            throw std::invalid_argument("all atoms must agree on carrying features");
        if (with_features && atom.feature_dim() != feature_dim)
            throw shape_error("atom feature dimensions differ");
    }
    if (with_features != init.features.has_value())
        throw std::invalid_argument("barycenter init and atoms must agree on carrying features");
    if (with_features && init.features->cols() != feature_dim)
        throw shape_error("barycenter init feature dimension does not match the atoms");
}

}  // namespace

BarycenterState gwb(const std::vector<Graph>& atoms, const Vector& weights,
                    BarycenterState init, int outer_iters, const SolverConfig& solver) {
    validate_inputs(atoms, weights, init, outer_iters);
    const int num_atoms = static_cast<int>(atoms.size());
    const bool with_features = atoms.front().has_features();

    BarycenterState state = std::move(init);
    const Vector& mu_b = state.node_dist;
    const int n_b = state.size();
    state.atom_couplings.clear();
    std::vector<Coupling> previous;

    for (int round = 0; round < outer_iters; ++round) {
        const Graph current(state.adjacency, mu_b, state.features);
        std::vector<Coupling> couplings(num_atoms);
        for (int k = 0; k < num_atoms; ++k) {
            SolverConfig cfg = solver;
            if (solver.warm_start && round > 0) cfg.init_coupling = previous[k].plan;
            std::optional<Matrix> dist;
            if (with_features) dist = feature_distance(*state.features, *atoms[k].features);
            couplings[k] = gwd(current, atoms[k], cfg, dist).coupling;
        }

        Matrix accum = Matrix::Zero(n_b, n_b);
        for (int k = 0; k < num_atoms; ++k) {
            accum.noalias() +=
                weights[k] * couplings[k].plan * atoms[k].adjacency * couplings[k].plan.transpose();
        }
        state.adjacency = accum.cwiseQuotient(mu_b * mu_b.transpose());

        if (with_features) {
            Matrix feat = Matrix::Zero(n_b, atoms.front().feature_dim());
            for (int k = 0; k < num_atoms; ++k)
                feat.noalias() += weights[k] * couplings[k].plan * *atoms[k].features;
            state.features = feat.array().colwise() / mu_b.array();
        }
        previous = std::move(couplings);
    }

    state.atom_couplings = std::move(previous);
    return state;
}

}  // namespace gwf
