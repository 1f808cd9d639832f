// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_HAND_CNN_HPP_
#define SIGNREC_MODELS_HAND_CNN_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "signrec/hand_volume.hpp"
#include "signrec/models/model.hpp"
#include "signrec/nn/conv3d.hpp"
#include "signrec/nn/dense.hpp"
#include "signrec/rng.hpp"

namespace signrec::models {

struct ConvSpec {
  nn::Extent3 kernel{3, 3, 3};
  std::size_t channels = 8;
  friend bool operator==(const ConvSpec&, const ConvSpec&) = default;
};

struct HandCnnConfig {
  Shape input{15, 32, 32, 3};  // frames x height x width x channels
  std::array<ConvSpec, 4> convs{{{{3, 3, 3}, 8}, {{3, 3, 3}, 16}, {{2, 3, 3}, 16}, {{2, 3, 3}, 32}}};
  nn::Extent3 pool{2, 2, 2};  // window and stride
  std::size_t fc1 = 128;
  std::size_t fc2 = 64;
  std::size_t classes = 0;

  /// Output shapes of conv1, conv2, pool1, conv3, conv4, pool2.
  std::vector<Shape> layer_shapes() const;
  std::size_t flat_size() const;
  void validate() const;
};

/// Two independent 3D-conv streams (left hand, right hand); their FC2
/// embeddings are concatenated into one softmax head.
class HandCnnModel final : public Model {
 public:
  struct Stream {
    std::array<nn::Conv3dLayer, 4> conv;
    nn::DenseParams fc1;
    nn::DenseParams fc2;
  };

  explicit HandCnnModel(const HandCnnConfig& config);
  HandCnnModel(const HandCnnConfig& config, Rng& init);

  const HandCnnConfig& spec() const { return config_; }
  Stream& stream(std::size_t side) { return streams_.at(side); }
  const Stream& stream(std::size_t side) const { return streams_.at(side); }
  nn::DenseParams& head() { return head_; }
  const nn::DenseParams& head() const { return head_; }

  ModelKind kind() const override { return ModelKind::kCnn3d; }
  std::size_t num_classes() const override { return config_.classes; }
  nn::ParamList parameters() override;
  nn::Matrix predict(const Batch& batch) const override;
  double loss_and_grad(const Batch& batch, const StepOptions& options) override;
  std::vector<std::pair<std::string, std::string>> config() const override;

  /// Concatenated FC2 activations, 2*fc2 x B (inference mode).
  nn::Matrix embed(const Batch& batch) const;
  nn::Vector forward(const HandVolume& left, const HandVolume& right) const;

  /// Flattened conv-stack output of one stream.
  nn::Vector conv_features(std::size_t side, const HandVolume& volume) const;

 private:
  struct StreamTape;
  nn::Matrix embed_pairs(const std::vector<std::pair<const HandVolume*, const HandVolume*>>& in) const;
  void check_volume(const HandVolume& v) const;
  double sample_step(const Example& e, double scale, const StepOptions& options);

  HandCnnConfig config_;
  std::array<Stream, 2> streams_;
  nn::DenseParams head_;
};

nn::Vector cnn_forward(const HandVolume& left, const HandVolume& right, const HandCnnModel& model);

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_HAND_CNN_HPP_
