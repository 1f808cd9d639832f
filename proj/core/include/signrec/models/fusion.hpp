// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_FUSION_HPP_
#define SIGNREC_MODELS_FUSION_HPP_

#include <memory>

#include "signrec/models/model.hpp"

namespace signrec::models {

struct FusedScores {
  nn::Vector scores;  // element-wise max, not renormalized
  Eigen::Index predicted = 0;
};

FusedScores fuse_max(const nn::Vector& p1, const nn::Vector& p2);

/// Late fusion of two independently trained scorers by element-wise maximum
/// of their class probabilities.
class FusionModel final : public Scorer {
 public:
  FusionModel(std::shared_ptr<const Model> skeletal, std::shared_ptr<const Model> hands);

  std::size_t num_classes() const override { return skeletal_->num_classes(); }
  nn::Matrix predict(const Batch& batch) const override;

  const Model& skeletal() const { return *skeletal_; }
  const Model& hands() const { return *hands_; }

 private:
  std::shared_ptr<const Model> skeletal_;
  std::shared_ptr<const Model> hands_;
};

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_FUSION_HPP_
