// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "gwf/graph.hpp"

namespace gwf {

// Elementwise max(raw, 0). Input must be square.
Matrix map_atom(const Matrix& raw);

// Softmax with max-subtraction; output is on the simplex and invariant to
// adding a constant to all inputs.
Vector map_weights(const Vector& raw);

// The coupling-independent part of the quadratic transport cost:
//   (C_s (.) C_s) mu_s 1^T + 1 mu_t^T (C_t (.) C_t)^T
// plus feature_weight * feature_dist when given (fused variant). The weight
// is an experimentation knob; 1.0 is the reference behaviour.
Matrix assemble_cost_const(const Graph& source, const Graph& target,
                           const std::optional<Matrix>& feature_dist = std::nullopt,
                           double feature_weight = 1.0);

// Squared discrepancy <cost_const - 2 C_s T C_t^T, T> of a coupling; equals
// the quadruple sum over node pairs for feasible couplings. Clamped to 0
// against floating cancellation.
double gw_cost(const Graph& source, const Graph& target, const Matrix& cost_const,
               const Coupling& coupling);

// Pairwise squared Euclidean distances between feature rows, entries clamped
// to 0 against cancellation.
Matrix feature_distance(const Matrix& source_features, const Matrix& target_features);

}  // namespace gwf
