// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_MODEL_HPP_
#define SIGNREC_MODELS_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signrec/hand_volume.hpp"
#include "signrec/nn/adam.hpp"
#include "signrec/nn/parameters.hpp"
#include "signrec/preprocess.hpp"

namespace signrec::models {

enum class ModelKind { kAiLstm, kSpatialAiLstm, kCnn3d, kMaxFusion, kBaseline };

std::string_view model_kind_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

/// Model-ready inputs derived from one SignSample. Only the fields a model
/// needs are populated.
struct Example {
  SkelTensor joints;     // T x 6 x 3, resampled
  SkelTensor augmented;  // T x 16 x 3, origin-transfer augmented
  HandVolume left_hand;
  HandVolume right_hand;
  nn::Vector features;   // 126 handcrafted statistics
  int label = 0;
  std::string subject;
};

using Batch = std::vector<const Example*>;

struct Hyperparams {
  std::optional<double> learning_rate;  // unset: per-architecture default
  double l2_beta = 0.008;
  double dropout_keep = 0.5;
  std::size_t epochs = 250;
  std::size_t batch_size = 64;
  nn::AdamConfig adam;
  std::uint64_t seed = 0;
  double grad_clip = 0.0;  // 0 disables gradient-norm clipping

  /// 5e-5 for skeletal LSTMs, 1e-5 for the CNN and the fusion pair,
  /// 1e-2 for the feature baseline.
  double learning_rate_for(ModelKind kind) const;
  void validate() const;
};

struct StepOptions {
  double l2_beta = 0.0;
  double dropout_keep = 1.0;
  Rng* dropout_rng = nullptr;  // null: no dropout
  std::size_t* correct = nullptr;  // if set, receives the number of argmax hits
};

/// Anything that maps a batch to class scores (C x B).
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::size_t num_classes() const = 0;
  virtual nn::Matrix predict(const Batch& batch) const = 0;
};

class Model : public Scorer {
 public:
  virtual ModelKind kind() const = 0;
  /// Stable, checkpoint-visible parameter handles.
  virtual nn::ParamList parameters() = 0;
  /// Zeroes gradients, runs forward + backward, returns
  /// mean cross-entropy + l2_beta * sum of squared regularized weights.
  virtual double loss_and_grad(const Batch& batch, const StepOptions& options) = 0;
  /// Same objective without dropout or gradients.
  double loss(const Batch& batch, double l2_beta) const;
  /// Architecture description stored in checkpoints.
  virtual std::vector<std::pair<std::string, std::string>> config() const = 0;

  double l2_penalty() const;
};

std::vector<int> labels_of(const Batch& batch);
std::size_t count_correct(const nn::Matrix& probs, const std::vector<int>& labels);

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_MODEL_HPP_
