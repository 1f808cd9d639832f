// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_GRADCHECK_HPP_
#define SIGNREC_NN_GRADCHECK_HPP_

#include <cstdint>
#include <functional>
#include <string>

#include "signrec/nn/parameters.hpp"

namespace signrec::nn {

struct GradcheckOptions {
  double eps = 1e-5;
  /// Coordinates sampled per parameter; 0 checks every coordinate.
  std::size_t coords_per_param = 16;
  std::uint64_t seed = 0;
};

struct GradcheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t coordinates = 0;
};

/// Compares analytic gradients (written into Param::grad by `compute_grads`)
/// with central differences of `loss`. Relative error per coordinate is
/// |g_an - g_fd| / max(1e-8, |g_an| + |g_fd|). Parameter values are restored.
GradcheckResult finite_diff_gradcheck(const ParamList& params,
                                      const std::function<double()>& loss,
                                      const std::function<void()>& compute_grads,
                                      const GradcheckOptions& options = {});

}  // namespace signrec::nn

#endif  // SIGNREC_NN_GRADCHECK_HPP_
