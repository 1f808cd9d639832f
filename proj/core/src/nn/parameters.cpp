// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/parameters.hpp"

#include <cmath>
#include <random>

namespace signrec::nn {

void zero_grads(const ParamList& params) {
  for (const ParamRef& p : params) p.param->grad.setZero();
}

double l2_sum(const ParamList& params) {
  double total = 0.0;
  for (const ParamRef& p : params) {
    if (p.regularized) total += p.param->value.squaredNorm();
  }
  return total;
}

void add_l2_gradient(const ParamList& params, double beta) {
  if (beta == 0.0) return;
  for (const ParamRef& p : params) {
    if (p.regularized) p.param->grad.noalias() += (2.0 * beta) * p.param->value;
  }
}

std::size_t parameter_count(const ParamList& params) {
  std::size_t n = 0;
  for (const ParamRef& p : params) n += static_cast<std::size_t>(p.param->value.size());
  return n;
}

void xavier_uniform(Matrix& m, Eigen::Index fan_in, Eigen::Index fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
  }
}

void he_normal(Matrix& m, Eigen::Index fan_in, Rng& rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(fan_in)));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
  }
}

}  // namespace signrec::nn
