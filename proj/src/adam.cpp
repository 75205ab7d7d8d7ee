// SPDX-License-Identifier: Apache-2.0
#include "gwf/adam.hpp"

#include <cmath>

namespace gwf {

void adam_step(Matrix& params, const Matrix& grads, AdamState& state, double learning_rate) {
    if (params.rows() != grads.rows() || params.cols() != grads.cols() ||
        params.rows() != state.first_moment.rows() || params.cols() != state.first_moment.cols())
        throw std::invalid_argument("adam_step: parameter, gradient and state shapes differ");
    state.step += 1;
    state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * grads;
    state.second_moment =
        state.beta2 * state.second_moment.array() + (1.0 - state.beta2) * grads.array().square();
    const double bias1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bias2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    params.array() -= learning_rate * (state.first_moment.array() / bias1) /
                      ((state.second_moment.array() / bias2).sqrt() + state.epsilon);
}

void adam_step(Vector& params, const Vector& grads, AdamState& state, double learning_rate) {
    Matrix p = params;
    adam_step(p, Matrix(grads), state, learning_rate);
    params = p;
}

}  // namespace gwf
