// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_DROPOUT_HPP_
#define SIGNREC_NN_DROPOUT_HPP_

#include "signrec/nn/parameters.hpp"

namespace signrec::nn {

/// Inverted-dropout mask: 0 with probability 1 - keep, else 1 / keep.
Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double keep, Rng& rng);

/// Training: x * mask (mask stored in *mask_out when given). Inference or
/// keep == 1: identity.
Matrix dropout_apply(const Matrix& x, double keep, bool training, Rng& rng,
                     Matrix* mask_out = nullptr);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_DROPOUT_HPP_
