// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_DENSE_HPP_
#define SIGNREC_NN_DENSE_HPP_

#include <span>
#include <string>

#include "signrec/nn/parameters.hpp"

namespace signrec::nn {

struct DenseParams {
  Param weight;  // out x in
  Param bias;    // out x 1

  DenseParams() = default;
  DenseParams(Eigen::Index in, Eigen::Index out);

  Eigen::Index in_dim() const { return weight.value.cols(); }
  Eigen::Index out_dim() const { return weight.value.rows(); }
  void initialize(Rng& rng);  // Glorot-uniform weight, zero bias
  void append_to(ParamList& out, const std::string& prefix);
};

/// x is in x B; returns out x B.
Matrix dense_forward(const Matrix& x, const DenseParams& p);
/// Accumulates weight/bias gradients; returns dL/dx.
Matrix dense_backward(const Matrix& x, const Matrix& d_out, DenseParams& p);

/// Column-wise softmax with max subtraction.
Matrix softmax_columns(const Matrix& logits);
Vector softmax(const Vector& logits);

/// Mean over columns of -log probs(label, col).
double mean_cross_entropy(const Matrix& probs, std::span<const int> labels);
/// (probs - onehot) / B: gradient of the mean cross-entropy w.r.t. logits.
Matrix cross_entropy_grad(const Matrix& probs, std::span<const int> labels);

struct SoftmaxXent {
  Vector probs;
  double loss = 0.0;       // data term + l2 term
  double data_loss = 0.0;  // -log probs[label]
};

/// probs = softmax(W x + b); loss = -log probs[label] + l2_beta * ||W||^2.
SoftmaxXent dense_softmax_xent(const Vector& x, const Matrix& weight, const Vector& bias,
                               int label, double l2_beta = 0.0);

/// Index of the largest entry; ties go to the lowest index.
Eigen::Index argmax(const Vector& v);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_DENSE_HPP_
