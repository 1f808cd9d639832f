// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace signrec::nn {

GradcheckResult finite_diff_gradcheck(const ParamList& params,
                                      const std::function<double()>& loss,
                                      const std::function<void()>& compute_grads,
                                      const GradcheckOptions& options) {
  zero_grads(params);
  compute_grads();
  std::vector<Matrix> analytic;
  analytic.reserve(params.size());
  for (const ParamRef& p : params) analytic.push_back(p.param->grad);

  Rng rng = make_rng(options.seed, "gradcheck");
  GradcheckResult result;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (!params[k].trainable) continue;
    Matrix& value = params[k].param->value;
    const auto n = static_cast<std::size_t>(value.size());
    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (options.coords_per_param > 0 && options.coords_per_param < n) {
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(options.coords_per_param);
    }
    for (std::size_t c : coords) {
      double& x = value.data()[c];
      const double saved = x;
      x = saved + options.eps;
      const double plus = loss();
      x = saved - options.eps;
      const double minus = loss();
      x = saved;
      const double numeric = (plus - minus) / (2.0 * options.eps);
      const double an = analytic[k].data()[c];
      const double rel = std::abs(an - numeric) / std::max(1e-8, std::abs(an) + std::abs(numeric));
      ++result.coordinates;
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_parameter = params[k].name;
      }
    }
  }
  return result;
}

}  // namespace signrec::nn
