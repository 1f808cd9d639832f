// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/fusion.hpp"

#include "signrec/error.hpp"
#include "signrec/nn/dense.hpp"

namespace signrec::models {

FusedScores fuse_max(const nn::Vector& p1, const nn::Vector& p2) {
  require(p1.size() == p2.size(), "fuse_max: score vectors have lengths " +
                                      std::to_string(p1.size()) + " and " +
                                      std::to_string(p2.size()));
  require(p1.size() > 0, "fuse_max: empty score vectors");
  FusedScores out;
  out.scores = p1.cwiseMax(p2);
  out.predicted = nn::argmax(out.scores);
  return out;
}

FusionModel::FusionModel(std::shared_ptr<const Model> skeletal, std::shared_ptr<const Model> hands)
    : skeletal_(std::move(skeletal)), hands_(std::move(hands)) {
  require(skeletal_ != nullptr && hands_ != nullptr, "fusion needs two models");
  if (skeletal_->num_classes() != hands_->num_classes()) {
    fail(ErrorCode::kMismatch, "fusion members disagree on class count (" +
                                   std::to_string(skeletal_->num_classes()) + " vs " +
                                   std::to_string(hands_->num_classes()) + ")");
  }
}

nn::Matrix FusionModel::predict(const Batch& batch) const {
  return skeletal_->predict(batch).cwiseMax(hands_->predict(batch));
}

}  // namespace signrec::models
