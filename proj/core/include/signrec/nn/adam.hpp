// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_ADAM_HPP_
#define SIGNREC_NN_ADAM_HPP_

#include <cstdint>
#include <vector>

#include "signrec/nn/parameters.hpp"

namespace signrec::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::uint64_t step = 0;
};

/// Bias-corrected Adam update of every trainable parameter. Moments are
/// allocated on first use. Throws kNumerical naming the parameter if any
/// gradient entry is not finite; nothing is updated in that case.
void adam_step(const ParamList& params, AdamState& state, double learning_rate,
               const AdamConfig& config = {});

/// Rescales all gradients so their joint L2 norm is at most max_norm.
void clip_grad_norm(const ParamList& params, double max_norm);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_ADAM_HPP_
