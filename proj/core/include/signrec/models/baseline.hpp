// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_BASELINE_HPP_
#define SIGNREC_MODELS_BASELINE_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "signrec/models/model.hpp"
#include "signrec/nn/dense.hpp"
#include "signrec/rng.hpp"

namespace signrec::models {

/// Multinomial logistic regression on standardized handcrafted features.
class BaselineModel final : public Model {
 public:
  BaselineModel(std::size_t feature_dim, std::size_t classes);
  BaselineModel(std::size_t feature_dim, std::size_t classes, Rng& init);

  /// Sets the standardizer from training features (sigma < 1e-12 becomes 1).
  void fit_standardizer(const Batch& batch);
  nn::Vector standardize(const nn::Vector& features) const;
  const nn::Vector mean() const { return mean_.value.col(0); }
  const nn::Vector stddev() const { return stddev_.value.col(0); }

  nn::DenseParams& head() { return head_; }
  const nn::DenseParams& head() const { return head_; }

  ModelKind kind() const override { return ModelKind::kBaseline; }
  std::size_t num_classes() const override { return classes_; }
  nn::ParamList parameters() override;
  nn::Matrix predict(const Batch& batch) const override;
  double loss_and_grad(const Batch& batch, const StepOptions& options) override;
  std::vector<std::pair<std::string, std::string>> config() const override;

 private:
  nn::Matrix inputs(const Batch& batch) const;

  std::size_t dim_;
  std::size_t classes_;
  nn::Param mean_;    // dim x 1, not trained
  nn::Param stddev_;  // dim x 1, not trained
  nn::DenseParams head_;
};

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_BASELINE_HPP_
