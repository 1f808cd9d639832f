// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/model.hpp"

#include "signrec/error.hpp"
#include "signrec/nn/dense.hpp"

namespace signrec::models {

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kAiLstm: return "ai-lstm";
    case ModelKind::kSpatialAiLstm: return "spatial-ai-lstm";
    case ModelKind::kCnn3d: return "cnn3d";
    case ModelKind::kMaxFusion: return "max-fusion";
    case ModelKind::kBaseline: return "baseline";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::kAiLstm, ModelKind::kSpatialAiLstm, ModelKind::kCnn3d,
                      ModelKind::kMaxFusion, ModelKind::kBaseline}) {
    if (model_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

double Hyperparams::learning_rate_for(ModelKind kind) const {
  if (learning_rate) return *learning_rate;
  switch (kind) {
    case ModelKind::kAiLstm:
    case ModelKind::kSpatialAiLstm: return 5e-5;
    case ModelKind::kCnn3d:
    case ModelKind::kMaxFusion: return 1e-5;
    case ModelKind::kBaseline: return 1e-2;
  }
  return 5e-5;
}

void Hyperparams::validate() const {
  require(!learning_rate || *learning_rate >= 0.0, "learning rate must be non-negative");
  require(l2_beta >= 0.0, "l2_beta must be non-negative");
  require(dropout_keep > 0.0 && dropout_keep <= 1.0, "dropout keep must lie in (0, 1]");
  require(batch_size > 0, "batch size must be positive");
  require(grad_clip >= 0.0, "grad_clip must be non-negative");
}

double Model::l2_penalty() const {
  return nn::l2_sum(const_cast<Model*>(this)->parameters());
}

double Model::loss(const Batch& batch, double l2_beta) const {
  const nn::Matrix probs = predict(batch);
  const std::vector<int> labels = labels_of(batch);
  return nn::mean_cross_entropy(probs, labels) + l2_beta * l2_penalty();
}

std::vector<int> labels_of(const Batch& batch) {
  std::vector<int> labels;
  labels.reserve(batch.size());
  for (const Example* e : batch) labels.push_back(e->label);
  return labels;
}

std::size_t count_correct(const nn::Matrix& probs, const std::vector<int>& labels) {
  std::size_t hits = 0;
  for (Eigen::Index b = 0; b < probs.cols(); ++b) {
    if (nn::argmax(probs.col(b)) == labels[static_cast<std::size_t>(b)]) ++hits;
  }
  return hits;
}

}  // namespace signrec::models
