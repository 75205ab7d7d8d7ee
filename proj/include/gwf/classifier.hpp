// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gwf/common.hpp"

namespace gwf {

// One-hidden-layer network mapping embeddings to class logits. The output
// layer is zero-initialized so an untrained classifier emits uniform
// probabilities.
struct Classifier {
    Matrix w1;  // hidden x input
    Vector b1;
    Matrix w2;  // classes x hidden
    Vector b2;

    static Classifier init(int input_dim, int num_classes, int hidden_width, Rng& rng);

    int input_dim() const { return static_cast<int>(w1.cols()); }
    int num_classes() const { return static_cast<int>(w2.rows()); }

    Vector logits(const Vector& z) const;
};

struct ClassifierGradients {
    Matrix w1;
    Vector b1;
    Matrix w2;
    Vector b2;
    Vector input;  // d loss / d z
};

// Cross-entropy of softmax(logits) against an integer label.
double cross_entropy(const Vector& logits, int label);

// Loss value plus gradients for the parameters and the input embedding.
double classifier_backward(const Classifier& clf, const Vector& z, int label,
                           ClassifierGradients& out);

}  // namespace gwf
