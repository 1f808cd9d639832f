// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/ai_lstm.hpp"

#include "signrec/error.hpp"
#include "signrec/nn/dropout.hpp"

namespace signrec::models {
namespace {

constexpr const char* kAxisNames[3] = {"x", "y", "z"};

}  // namespace

void AiLstmConfig::validate() const {
  require(joints > 0, "AI-LSTM needs at least one joint");
  require(state_size > 0, "AI-LSTM state size must be positive");
  require(layers > 0, "AI-LSTM needs at least one layer");
  require(frames > 0, "AI-LSTM frame count must be positive");
  require(classes >= 2, "AI-LSTM needs at least two classes");
}

AiLstmConfig AiLstmConfig::spatial_variant(std::size_t classes, std::size_t state_size) {
  AiLstmConfig c;
  c.joints = kAugmentedJoints;
  c.state_size = state_size;
  c.classes = classes;
  c.spatial = true;
  return c;
}

AiLstmModel::AiLstmModel(const AiLstmConfig& config) : config_(config) {
  config_.validate();
  const auto S = static_cast<Eigen::Index>(config_.state_size);
  for (auto& layers : axes_) {
    for (std::size_t l = 0; l < config_.layers; ++l) {
      const auto in = l == 0 ? static_cast<Eigen::Index>(config_.joints) : S;
      layers.emplace_back(in, S);
    }
  }
  head_ = nn::DenseParams(3 * S, static_cast<Eigen::Index>(config_.classes));
}

AiLstmModel::AiLstmModel(const AiLstmConfig& config, Rng& init) : AiLstmModel(config) {
  for (auto& layers : axes_) {
    for (auto& l : layers) l.initialize(init);
  }
  head_.initialize(init);
}

ModelKind AiLstmModel::kind() const {
  return config_.spatial ? ModelKind::kSpatialAiLstm : ModelKind::kAiLstm;
}

nn::ParamList AiLstmModel::parameters() {
  nn::ParamList out;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t l = 0; l < axes_[a].size(); ++l) {
      axes_[a][l].append_to(out, std::string(kAxisNames[a]) + ".l" + std::to_string(l) + ".");
    }
  }
  head_.append_to(out, "head.");
  return out;
}

std::vector<const SkelTensor*> AiLstmModel::inputs_of(const Batch& batch) const {
  std::vector<const SkelTensor*> out;
  out.reserve(batch.size());
  for (const Example* e : batch) out.push_back(config_.spatial ? &e->augmented : &e->joints);
  return out;
}

AiLstmModel::AxisSteps AiLstmModel::steps_of(
    const std::vector<const SkelTensor*>& inputs) const {
  require(!inputs.empty(), "empty batch");
  const std::size_t T = config_.frames, J = config_.joints;
  const auto B = static_cast<Eigen::Index>(inputs.size());
  for (const SkelTensor* x : inputs) {
    if (x->frames() != T || x->joints() != J) {
      fail(ErrorCode::kInvalidArgument,
           "AI-LSTM input is " + std::to_string(x->frames()) + "x" +
               std::to_string(x->joints()) + "x3, model expects " + std::to_string(T) + "x" +
               std::to_string(J) + "x3");
    }
  }
  AxisSteps steps;
  for (std::size_t a = 0; a < 3; ++a) {
    steps[a].assign(T, nn::Matrix(static_cast<Eigen::Index>(J), B));
    for (std::size_t t = 0; t < T; ++t) {
      nn::Matrix& m = steps[a][t];
      for (Eigen::Index b = 0; b < B; ++b) {
        const SkelTensor& x = *inputs[static_cast<std::size_t>(b)];
        for (std::size_t j = 0; j < J; ++j) m(static_cast<Eigen::Index>(j), b) = x(t, j, a);
      }
    }
  }
  return steps;
}

nn::Matrix AiLstmModel::embed_inputs(const std::vector<const SkelTensor*>& inputs) const {
  const AxisSteps steps = steps_of(inputs);
  const auto S = static_cast<Eigen::Index>(config_.state_size);
  nn::Matrix emb(3 * S, static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t a = 0; a < 3; ++a) {
    const nn::LstmTape tape = nn::lstm_forward(steps[a], axes_[a]);
    emb.middleRows(static_cast<Eigen::Index>(a) * S, S) = tape.output();
  }
  return emb;
}

nn::Matrix AiLstmModel::embed(const Batch& batch) const { return embed_inputs(inputs_of(batch)); }

nn::Matrix AiLstmModel::predict(const Batch& batch) const {
  return nn::softmax_columns(nn::dense_forward(embed(batch), head_));
}

nn::Vector AiLstmModel::forward(const SkelTensor& x) const {
  const nn::Matrix emb = embed_inputs({&x});
  return nn::softmax_columns(nn::dense_forward(emb, head_)).col(0);
}

double AiLstmModel::loss_and_grad(const Batch& batch, const StepOptions& options) {
  nn::ParamList params = parameters();
  nn::zero_grads(params);
  const std::vector<int> labels = labels_of(batch);
  const AxisSteps steps = steps_of(inputs_of(batch));
  const auto S = static_cast<Eigen::Index>(config_.state_size);
  const auto B = static_cast<Eigen::Index>(batch.size());
  const bool drop = options.dropout_rng != nullptr && options.dropout_keep < 1.0;
  const nn::LstmDropout lstm_drop{options.dropout_keep, drop ? options.dropout_rng : nullptr};

  std::array<nn::LstmTape, 3> tapes;
  nn::Matrix emb(3 * S, B);
  for (std::size_t a = 0; a < 3; ++a) {
    tapes[a] = nn::lstm_forward(steps[a], axes_[a], lstm_drop);
    emb.middleRows(static_cast<Eigen::Index>(a) * S, S) = tapes[a].output();
  }
  nn::Matrix mask;
  nn::Matrix head_in = emb;
  if (drop) {
    mask = nn::dropout_mask(emb.rows(), emb.cols(), options.dropout_keep, *options.dropout_rng);
    head_in.array() *= mask.array();
  }
  const nn::Matrix probs = nn::softmax_columns(nn::dense_forward(head_in, head_));
  if (options.correct) *options.correct = count_correct(probs, labels);
  const double loss =
      nn::mean_cross_entropy(probs, labels) + options.l2_beta * nn::l2_sum(params);

  nn::Matrix d_emb = nn::dense_backward(head_in, nn::cross_entropy_grad(probs, labels), head_);
  if (drop) d_emb.array() *= mask.array();
  for (std::size_t a = 0; a < 3; ++a) {
    nn::lstm_backward(tapes[a], axes_[a], d_emb.middleRows(static_cast<Eigen::Index>(a) * S, S));
  }
  nn::add_l2_gradient(params, options.l2_beta);
  return loss;
}

std::vector<std::pair<std::string, std::string>> AiLstmModel::config() const {
  return {{"joints", std::to_string(config_.joints)},
          {"state_size", std::to_string(config_.state_size)},
          {"layers", std::to_string(config_.layers)},
          {"frames", std::to_string(config_.frames)},
          {"classes", std::to_string(config_.classes)},
          {"spatial", config_.spatial ? "1" : "0"}};
}

nn::Vector ai_lstm_forward(const SkelTensor& x, const AiLstmModel& model) {
  require(!model.spec().spatial, "ai_lstm_forward needs a non-spatial model");
  return model.forward(x);
}

nn::Vector spatial_ai_lstm_forward(const SkelTensor& x, const AiLstmModel& model) {
  require(model.spec().spatial, "spatial_ai_lstm_forward needs a spatial model");
  return model.forward(x);
}

}  // namespace signrec::models
