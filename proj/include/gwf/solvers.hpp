// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "gwf/graph.hpp"

namespace gwf {

enum class SolverKind { ppa, badmm };

struct SolverConfig {
    SolverKind kind = SolverKind::ppa;
    double gamma = 0.01;     // regularization weight
    int inner_iters = 50;    // number of update steps M

    // Testing hook: overrides the product-coupling initialization.
    std::optional<Matrix> init_coupling;

    // Symmetry-breaking perturbation of the default initialization: i.i.d.
    // uniform noise in [0, jitter * min(mu)] followed by one Sinkhorn rescale.
    // 0 disables it; ignored when init_coupling is set.
    double jitter = 0.0;
    std::uint64_t jitter_seed = 0;

    // Reuse the previous round's plans as initialization across barycenter
    // outer iterations instead of restarting from the product coupling.
    bool warm_start = false;
};

struct SolverResult {
    Coupling coupling;              // T^(M); rows exactly match the source marginal
    double sq_discrepancy = 0.0;    // cost at the returned plan, >= 0
    std::vector<double> cost_trace; // cost at T^(0..M); size inner_iters + 1

    // BADMM diagnostics (0 for PPA): ||T - S||_1 after the last step and the
    // column-marginal residual of the auxiliary S.
    double primal_residual = 0.0;
    double aux_col_residual = 0.0;
};

// Proximal point iterations, one Sinkhorn sweep per step. The returned plan
// has exact row marginals; column marginals are approximate.
SolverResult gwd_ppa(const Graph& source, const Graph& target, const SolverConfig& config,
                     const std::optional<Matrix>& feature_dist = std::nullopt);

// Bregman ADMM: alternating column-normalized S and row-normalized T updates
// with a dual variable. The returned T has exact row marginals.
SolverResult gwd_badmm(const Graph& source, const Graph& target, const SolverConfig& config,
                       const std::optional<Matrix>& feature_dist = std::nullopt);

// Dispatch on config.kind.
SolverResult gwd(const Graph& source, const Graph& target, const SolverConfig& config,
                 const std::optional<Matrix>& feature_dist = std::nullopt);

}  // namespace gwf
