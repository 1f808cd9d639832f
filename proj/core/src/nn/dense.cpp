// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/dense.hpp"

#include <cmath>

#include "signrec/error.hpp"

namespace signrec::nn {

DenseParams::DenseParams(Eigen::Index in, Eigen::Index out) : weight(out, in), bias(out, 1) {}

void DenseParams::initialize(Rng& rng) {
  xavier_uniform(weight.value, in_dim(), out_dim(), rng);
  bias.value.setZero();
}

void DenseParams::append_to(ParamList& out, const std::string& prefix) {
  out.push_back({prefix + "W", &weight, true, true});
  out.push_back({prefix + "b", &bias, false, true});
}

Matrix dense_forward(const Matrix& x, const DenseParams& p) {
  require(x.rows() == p.in_dim(), "dense input has " + std::to_string(x.rows()) +
                                      " rows, layer expects " + std::to_string(p.in_dim()));
  Matrix out = p.weight.value * x;
  out.colwise() += p.bias.value.col(0);
  return out;
}

Matrix dense_backward(const Matrix& x, const Matrix& d_out, DenseParams& p) {
  p.weight.grad.noalias() += d_out * x.transpose();
  p.bias.grad.col(0) += d_out.rowwise().sum();
  return p.weight.value.transpose() * d_out;
}

Matrix softmax_columns(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const double m = logits.col(j).maxCoeff();
    out.col(j) = (logits.col(j).array() - m).exp().matrix();
    out.col(j) /= out.col(j).sum();
  }
  return out;
}

Vector softmax(const Vector& logits) { return softmax_columns(logits); }

double mean_cross_entropy(const Matrix& probs, std::span<const int> labels) {
  require(static_cast<std::size_t>(probs.cols()) == labels.size(), "label count mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    require(labels[j] >= 0 && labels[j] < probs.rows(), "label out of range");
    total -= std::log(std::max(probs(labels[j], static_cast<Eigen::Index>(j)), 1e-300));
  }
  return total / static_cast<double>(labels.size());
}

Matrix cross_entropy_grad(const Matrix& probs, std::span<const int> labels) {
  Matrix d = probs;
  for (std::size_t j = 0; j < labels.size(); ++j) d(labels[j], static_cast<Eigen::Index>(j)) -= 1.0;
  return d / static_cast<double>(labels.size());
}

SoftmaxXent dense_softmax_xent(const Vector& x, const Matrix& weight, const Vector& bias,
                               int label, double l2_beta) {
  require(weight.cols() == x.size() && weight.rows() == bias.size(),
          "dense_softmax_xent shape mismatch");
  if (label < 0 || label >= weight.rows()) {
    fail(ErrorCode::kInvalidArgument, "label " + std::to_string(label) + " out of range [0, " +
                                          std::to_string(weight.rows()) + ")");
  }
  SoftmaxXent r;
  r.probs = softmax(weight * x + bias);
  r.data_loss = -std::log(std::max(r.probs(label), 1e-300));
  r.loss = r.data_loss + l2_beta * weight.squaredNorm();
  return r;
}

Eigen::Index argmax(const Vector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

}  // namespace signrec::nn
