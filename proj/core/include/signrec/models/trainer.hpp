// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_TRAINER_HPP_
#define SIGNREC_MODELS_TRAINER_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "signrec/models/hand_cnn.hpp"
#include "signrec/models/model.hpp"
#include "signrec/nn/checkpoint.hpp"
#include "signrec/nn/gradcheck.hpp"

namespace signrec::models {

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;            // sample-weighted mean batch objective
  double train_accuracy = 0.0;  // measured on the training-mode forward pass
  std::size_t batches = 0;
};

using TrainingHistory = std::vector<EpochRecord>;
using EpochCallback = std::function<void(const EpochRecord&)>;

/// Architecture choices that are not learned.
struct ModelSpec {
  ModelKind kind = ModelKind::kAiLstm;
  std::size_t state_size = 50;
  std::size_t lstm_layers = 2;
  std::size_t frames = kDefaultFrames;
  HandCnnConfig cnn;  // input shape is taken from the data at fit time
};

/// Builds a freshly initialized single-network model. kMaxFusion is not a
/// single network and is rejected.
std::unique_ptr<Model> build_model(const ModelSpec& spec, ModelKind kind, std::size_t classes,
                                   Rng& init);

/// Mini-batch Adam over `train`. Deterministic for a fixed hp.seed and
/// stream tag.
TrainingHistory train_model(Model& model, const std::vector<Example>& train,
                            const Hyperparams& hp, double learning_rate,
                            std::string_view stream = "train",
                            const EpochCallback& on_epoch = {});

struct TrainedModel {
  ModelSpec spec;
  Hyperparams hp;
  std::vector<std::string> vocabulary;
  std::shared_ptr<Model> primary;    // the model, or the skeletal fusion member
  std::shared_ptr<Model> secondary;  // hand CNN fusion member, else null
  TrainingHistory history;
  TrainingHistory secondary_history;

  std::shared_ptr<const Scorer> scorer() const;
  std::vector<nn::Checkpoint> checkpoints() const;
};

TrainedModel fit(const ModelSpec& spec, const std::vector<Example>& train,
                 const Hyperparams& hp, const std::vector<std::string>& vocabulary,
                 const EpochCallback& on_epoch = {});

nn::Checkpoint make_checkpoint(Model& model, const Hyperparams& hp, double learning_rate,
                               const std::vector<std::string>& vocabulary);
std::unique_ptr<Model> model_from_checkpoint(const nn::Checkpoint& ckpt);
Hyperparams hyperparams_from_checkpoint(const nn::Checkpoint& ckpt);
/// Architecture for retraining; two checkpoints must be an ai-lstm and a
/// cnn3d (kUsage otherwise).
ModelSpec spec_from_checkpoints(const std::vector<nn::Checkpoint>& ckpts);

/// One checkpoint gives that model; two give their max fusion (vocabularies
/// must agree, kMismatch otherwise).
std::shared_ptr<const Scorer> scorer_from_checkpoints(const std::vector<nn::Checkpoint>& ckpts);

/// Finite-difference check of loss_and_grad without dropout.
nn::GradcheckResult gradcheck_model(Model& model, const Batch& batch, double l2_beta,
                                    const nn::GradcheckOptions& options = {});

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_TRAINER_HPP_
