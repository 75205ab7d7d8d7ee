// SPDX-License-Identifier: Apache-2.0
#include "gwf/classifier.hpp"

#include <cmath>

namespace gwf {

Classifier Classifier::init(int input_dim, int num_classes, int hidden_width, Rng& rng) {
    if (input_dim < 1 || num_classes < 1 || hidden_width < 1)
        throw std::invalid_argument("classifier dimensions must be positive");
    Classifier clf;
    clf.w1 = Matrix::NullaryExpr(hidden_width, input_dim, [&rng](Eigen::Index, Eigen::Index) {
        return rng.normal();
    }) / std::sqrt(static_cast<double>(input_dim));
    clf.b1 = Vector::Zero(hidden_width);
    clf.w2 = Matrix::Zero(num_classes, hidden_width);
    clf.b2 = Vector::Zero(num_classes);
    return clf;
}

Vector Classifier::logits(const Vector& z) const {
    if (z.size() != w1.cols()) throw shape_error("classifier input width mismatch");
    const Vector hidden = (w1 * z + b1).cwiseMax(0.0);
    return w2 * hidden + b2;
}

double cross_entropy(const Vector& logits, int label) {
    if (label < 0 || label >= logits.size())
        throw std::invalid_argument("label out of range for logits");
    const double mx = logits.maxCoeff();
    const double lse = mx + std::log((logits.array() - mx).exp().sum());
    return lse - logits[label];
}

double classifier_backward(const Classifier& clf, const Vector& z, int label,
                           ClassifierGradients& out) {
    if (z.size() != clf.w1.cols()) throw shape_error("classifier input width mismatch");
    if (label < 0 || label >= clf.num_classes())
        throw std::invalid_argument("label out of range for classifier");

    const Vector pre = clf.w1 * z + clf.b1;
    const Vector hidden = pre.cwiseMax(0.0);
    const Vector logits = clf.w2 * hidden + clf.b2;

    const double mx = logits.maxCoeff();
    const Vector exps = (logits.array() - mx).exp();
    const Vector probs = exps / exps.sum();
    const double loss = std::log(exps.sum()) + mx - logits[label];

    Vector dlogits = probs;
    dlogits[label] -= 1.0;
    out.w2 = dlogits * hidden.transpose();
    out.b2 = dlogits;
    const Vector dhidden = clf.w2.transpose() * dlogits;
    const Vector dpre = (pre.array() >= 0.0).cast<double>() * dhidden.array();
    out.w1 = dpre * z.transpose();
    out.b1 = dpre;
    out.input = clf.w1.transpose() * dpre;
    return loss;
}

}  // namespace gwf
