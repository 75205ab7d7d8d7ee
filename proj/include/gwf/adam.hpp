// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gwf/common.hpp"

namespace gwf {

// Bias-corrected Adam state for one parameter tensor.
struct AdamState {
    Matrix first_moment;
    Matrix second_moment;
    long step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_shape(Eigen::Index rows, Eigen::Index cols) {
        AdamState s;
        s.first_moment = Matrix::Zero(rows, cols);
        s.second_moment = Matrix::Zero(rows, cols);
        return s;
    }
};

// One Adam update; increments the step counter.
void adam_step(Matrix& params, const Matrix& grads, AdamState& state, double learning_rate);
void adam_step(Vector& params, const Vector& grads, AdamState& state, double learning_rate);

}  // namespace gwf
