// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_PARAMETERS_HPP_
#define SIGNREC_NN_PARAMETERS_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "signrec/rng.hpp"

namespace signrec::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A learnable matrix and its gradient accumulator.
struct Param {
  Matrix value;
  Matrix grad;

  Param() = default;
  Param(Eigen::Index rows, Eigen::Index cols)
      : value(Matrix::Zero(rows, cols)), grad(Matrix::Zero(rows, cols)) {}
};

/// Non-owning handle used by optimizers, checkpoints and gradient checks.
struct ParamRef {
  std::string name;
  Param* param = nullptr;
  bool regularized = false;  // included in the L2 penalty
  bool trainable = true;     // updated by the optimizer
};

using ParamList = std::vector<ParamRef>;

void zero_grads(const ParamList& params);
/// Sum of squared entries over regularized parameters.
double l2_sum(const ParamList& params);
/// grad += 2 * beta * value for regularized parameters.
void add_l2_gradient(const ParamList& params, double beta);
std::size_t parameter_count(const ParamList& params);

void xavier_uniform(Matrix& m, Eigen::Index fan_in, Eigen::Index fan_out, Rng& rng);
void he_normal(Matrix& m, Eigen::Index fan_in, Rng& rng);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_PARAMETERS_HPP_
