// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_AI_LSTM_HPP_
#define SIGNREC_MODELS_AI_LSTM_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "signrec/models/model.hpp"
#include "signrec/nn/dense.hpp"
#include "signrec/nn/lstm.hpp"
#include "signrec/rng.hpp"

namespace signrec::models {

struct AiLstmConfig {
  std::size_t joints = 6;  // 16 for the spatial variant
  std::size_t state_size = 50;
  std::size_t layers = 2;
  std::size_t frames = kDefaultFrames;
  std::size_t classes = 0;
  bool spatial = false;  // read Example::augmented instead of Example::joints

  void validate() const;
  static AiLstmConfig spatial_variant(std::size_t classes, std::size_t state_size = 50);
};

/// Axis-independent LSTM: one stacked LSTM per coordinate axis, final hidden
/// states concatenated (x, y, z) into a shared softmax head.
class AiLstmModel final : public Model {
 public:
  /// Zero-initialized parameters.
  explicit AiLstmModel(const AiLstmConfig& config);
  AiLstmModel(const AiLstmConfig& config, Rng& init);

  const AiLstmConfig& spec() const { return config_; }
  std::vector<nn::LstmParams>& axis(std::size_t a) { return axes_.at(a); }
  const std::vector<nn::LstmParams>& axis(std::size_t a) const { return axes_.at(a); }
  nn::DenseParams& head() { return head_; }
  const nn::DenseParams& head() const { return head_; }

  ModelKind kind() const override;
  std::size_t num_classes() const override { return config_.classes; }
  nn::ParamList parameters() override;
  nn::Matrix predict(const Batch& batch) const override;
  double loss_and_grad(const Batch& batch, const StepOptions& options) override;
  std::vector<std::pair<std::string, std::string>> config() const override;

  /// Concatenated final hidden states, 3S x B (inference mode).
  nn::Matrix embed(const Batch& batch) const;
  /// Probabilities for one T x J x 3 input.
  nn::Vector forward(const SkelTensor& x) const;

 private:
  using AxisSteps = std::array<std::vector<nn::Matrix>, 3>;
  AxisSteps steps_of(const std::vector<const SkelTensor*>& inputs) const;
  std::vector<const SkelTensor*> inputs_of(const Batch& batch) const;
  nn::Matrix embed_inputs(const std::vector<const SkelTensor*>& inputs) const;

  AiLstmConfig config_;
  std::array<std::vector<nn::LstmParams>, 3> axes_;
  nn::DenseParams head_;
};

nn::Vector ai_lstm_forward(const SkelTensor& x, const AiLstmModel& model);
nn::Vector spatial_ai_lstm_forward(const SkelTensor& x, const AiLstmModel& model);

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_AI_LSTM_HPP_
