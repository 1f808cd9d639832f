// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/adam.hpp"

#include <cmath>

#include "signrec/error.hpp"

namespace signrec::nn {

void adam_step(const ParamList& params, AdamState& state, double learning_rate,
               const AdamConfig& config) {
  for (const ParamRef& p : params) {
    if (p.trainable && !p.param->grad.allFinite()) {
      fail(ErrorCode::kNumerical, "non-finite gradient in parameter '" + p.name + "'");
    }
  }
  if (state.m.empty()) {
    for (const ParamRef& p : params) {
      state.m.push_back(Matrix::Zero(p.param->value.rows(), p.param->value.cols()));
      state.v.push_back(Matrix::Zero(p.param->value.rows(), p.param->value.cols()));
    }
  }
  require(state.m.size() == params.size(), "Adam state does not match parameter list");
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    const ParamRef& p = params[k];
    if (!p.trainable) continue;
    const auto g = p.param->grad.array();
    state.m[k].array() = config.beta1 * state.m[k].array() + (1.0 - config.beta1) * g;
    state.v[k].array() = config.beta2 * state.v[k].array() + (1.0 - config.beta2) * g * g;
    p.param->value.array() -=
        learning_rate * (state.m[k].array() / correction1) /
        ((state.v[k].array() / correction2).sqrt() + config.epsilon);
  }
}

void clip_grad_norm(const ParamList& params, double max_norm) {
  double sq = 0.0;
  for (const ParamRef& p : params) sq += p.param->grad.squaredNorm();
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0.0) return;
  const double scale = max_norm / norm;
  for (const ParamRef& p : params) p.param->grad *= scale;
}

}  // namespace signrec::nn
