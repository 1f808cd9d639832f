// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/dropout.hpp"

#include <random>

#include "signrec/error.hpp"

namespace signrec::nn {

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double keep, Rng& rng) {
  require(keep > 0.0 && keep <= 1.0, "dropout keep probability must lie in (0, 1]");
  Matrix mask(rows, cols);
  if (keep == 1.0) {
    mask.setOnes();
    return mask;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = 1.0 / keep;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = unit(rng) < keep ? scale : 0.0;
  }
  return mask;
}

Matrix dropout_apply(const Matrix& x, double keep, bool training, Rng& rng, Matrix* mask_out) {
  require(keep > 0.0 && keep <= 1.0, "dropout keep probability must lie in (0, 1]");
  if (!training || keep == 1.0) {
    if (mask_out) *mask_out = Matrix::Ones(x.rows(), x.cols());
    return x;
  }
  Matrix mask = dropout_mask(x.rows(), x.cols(), keep, rng);
  Matrix out = (x.array() * mask.array()).matrix();
  if (mask_out) *mask_out = std::move(mask);
  return out;
}

}  // namespace signrec::nn
