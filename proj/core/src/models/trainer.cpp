// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/trainer.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "signrec/error.hpp"
#include "signrec/models/ai_lstm.hpp"
#include "signrec/models/baseline.hpp"
#include "signrec/models/examples.hpp"
#include "signrec/models/features.hpp"
#include "signrec/models/fusion.hpp"
#include "signrec/nn/adam.hpp"
#include "signrec/rng.hpp"

namespace signrec::models {
namespace {

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      fail(ErrorCode::kFormat, "checkpoint config value '" + text + "' is not a dimension list");
    }
  }
  return out;
}

const std::string& config_of(const nn::Checkpoint& ckpt, const std::string& key) {
  const std::string* v = ckpt.config_value(key);
  if (v == nullptr) fail(ErrorCode::kFormat, "checkpoint lacks config key '" + key + "'");
  return *v;
}

std::size_t config_size(const nn::Checkpoint& ckpt, const std::string& key) {
  const auto dims = parse_dims(config_of(ckpt, key));
  if (dims.size() != 1) fail(ErrorCode::kFormat, "checkpoint config '" + key + "' is not a number");
  return dims[0];
}

nn::Extent3 extent_of(const std::vector<std::size_t>& d, const std::string& key) {
  if (d.size() < 3) fail(ErrorCode::kFormat, "checkpoint config '" + key + "' is malformed");
  return {d[0], d[1], d[2]};
}

HandCnnConfig cnn_config_from(const nn::Checkpoint& ckpt) {
  HandCnnConfig c;
  c.input = parse_dims(config_of(ckpt, "input"));
  if (c.input.size() != 4) fail(ErrorCode::kFormat, "checkpoint CNN input must have 4 dims");
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string key = "conv" + std::to_string(i + 1);
    const auto d = parse_dims(config_of(ckpt, key));
    if (d.size() != 4) fail(ErrorCode::kFormat, "checkpoint config '" + key + "' is malformed");
    c.convs[i] = {extent_of(d, key), d[3]};
  }
  c.pool = extent_of(parse_dims(config_of(ckpt, "pool")), "pool");
  c.fc1 = config_size(ckpt, "fc1");
  c.fc2 = config_size(ckpt, "fc2");
  c.classes = config_size(ckpt, "classes");
  return c;
}

// Fisher-Yates with raw engine output: identical across standard libraries.
void shuffle_indices(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

std::unique_ptr<Model> build_model(const ModelSpec& spec, ModelKind kind, std::size_t classes,
                                   Rng& init) {
  switch (kind) {
    case ModelKind::kAiLstm:
    case ModelKind::kSpatialAiLstm: {
      AiLstmConfig c;
      c.spatial = kind == ModelKind::kSpatialAiLstm;
      c.joints = c.spatial ? kAugmentedJoints : kArmJoints.size();
      c.state_size = spec.state_size;
      c.layers = spec.lstm_layers;
      c.frames = spec.frames;
      c.classes = classes;
      return std::make_unique<AiLstmModel>(c, init);
    }
    case ModelKind::kCnn3d: {
      HandCnnConfig c = spec.cnn;
      c.classes = classes;
      return std::make_unique<HandCnnModel>(c, init);
    }
    case ModelKind::kBaseline:
      return std::make_unique<BaselineModel>(kFeatureCount, classes, init);
    case ModelKind::kMaxFusion:
      break;
  }
  fail(ErrorCode::kInvalidArgument, "max-fusion is built from two member models");
}

TrainingHistory train_model(Model& model, const std::vector<Example>& train,
                            const Hyperparams& hp, double learning_rate, std::string_view stream,
                            const EpochCallback& on_epoch) {
  hp.validate();
  if (train.empty()) fail(ErrorCode::kEmptyDataset, "training set is empty");
  const std::string tag(stream);
  Rng shuffle_rng = make_rng(hp.seed, tag + ":shuffle");
  Rng dropout_rng = make_rng(hp.seed, tag + ":dropout");
  const nn::ParamList params = model.parameters();
  nn::AdamState adam;

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  TrainingHistory history;
  history.reserve(hp.epochs);
  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    shuffle_indices(order, shuffle_rng);
    EpochRecord rec;
    rec.epoch = epoch + 1;
    double loss_sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += hp.batch_size) {
      const std::size_t end = std::min(order.size(), begin + hp.batch_size);
      Batch batch;
      batch.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) batch.push_back(&train[order[i]]);
      std::size_t correct = 0;
      StepOptions opts{hp.l2_beta, hp.dropout_keep, &dropout_rng, &correct};
      const double loss = model.loss_and_grad(batch, opts);
      if (!std::isfinite(loss)) {
        fail(ErrorCode::kNumerical, "non-finite loss at epoch " + std::to_string(rec.epoch) +
                                        ", batch " + std::to_string(rec.batches + 1));
      }
      if (hp.grad_clip > 0.0) nn::clip_grad_norm(params, hp.grad_clip);
      nn::adam_step(params, adam, learning_rate, hp.adam);
      loss_sum += loss * static_cast<double>(batch.size());
      hits += correct;
      ++rec.batches;
    }
    rec.loss = loss_sum / static_cast<double>(train.size());
    rec.train_accuracy = static_cast<double>(hits) / static_cast<double>(train.size());
    history.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return history;
}

std::shared_ptr<const Scorer> TrainedModel::scorer() const {
  if (secondary) return std::make_shared<FusionModel>(primary, secondary);
  return primary;
}

std::vector<nn::Checkpoint> TrainedModel::checkpoints() const {
  std::vector<nn::Checkpoint> out;
  const double lr = hp.learning_rate_for(spec.kind);
  out.push_back(make_checkpoint(*primary, hp, lr, vocabulary));
  if (secondary) out.push_back(make_checkpoint(*secondary, hp, lr, vocabulary));
  return out;
}

TrainedModel fit(const ModelSpec& spec, const std::vector<Example>& train, const Hyperparams& hp,
                 const std::vector<std::string>& vocabulary, const EpochCallback& on_epoch) {
  if (train.empty()) fail(ErrorCode::kEmptyDataset, "training set is empty");
  TrainedModel out;
  out.spec = spec;
  out.hp = hp;
  out.vocabulary = vocabulary;
  const std::size_t classes = vocabulary.size();
  const double lr = hp.learning_rate_for(spec.kind);
  const InputNeeds needs = input_needs(spec.kind);
  if (needs.hands) out.spec.cnn.input = train.front().left_hand.tensor().shape();

  auto train_one = [&](ModelKind kind, TrainingHistory& history) {
    const std::string name(model_kind_name(kind));
    Rng init = make_rng(hp.seed, "init:" + name);
    std::shared_ptr<Model> m = build_model(out.spec, kind, classes, init);
    if (kind == ModelKind::kBaseline) {
      static_cast<BaselineModel&>(*m).fit_standardizer(batch_of(train));
    }
    history = train_model(*m, train, hp, lr, name, on_epoch);
    return m;
  };

  if (spec.kind == ModelKind::kMaxFusion) {
    out.primary = train_one(ModelKind::kAiLstm, out.history);
    out.secondary = train_one(ModelKind::kCnn3d, out.secondary_history);
  } else {
    out.primary = train_one(spec.kind, out.history);
  }
  return out;
}

nn::Checkpoint make_checkpoint(Model& model, const Hyperparams& hp, double learning_rate,
                               const std::vector<std::string>& vocabulary) {
  nn::Checkpoint c;
  c.arch = std::string(model_kind_name(model.kind()));
  c.hyperparams = {{"learning_rate", learning_rate},
                   {"l2_beta", hp.l2_beta},
                   {"dropout_keep", hp.dropout_keep},
                   {"epochs", static_cast<double>(hp.epochs)},
                   {"batch_size", static_cast<double>(hp.batch_size)},
                   {"adam_beta1", hp.adam.beta1},
                   {"adam_beta2", hp.adam.beta2},
                   {"adam_epsilon", hp.adam.epsilon},
                   {"seed", static_cast<double>(hp.seed)},
                   {"grad_clip", hp.grad_clip}};
  c.config = model.config();
  c.vocabulary = vocabulary;
  c.tensors = nn::export_params(model.parameters());
  return c;
}

std::unique_ptr<Model> model_from_checkpoint(const nn::Checkpoint& ckpt) {
  const auto kind = parse_model_kind(ckpt.arch);
  if (!kind || *kind == ModelKind::kMaxFusion) {
    fail(ErrorCode::kFormat, "unknown checkpoint architecture '" + ckpt.arch + "'");
  }
  std::unique_ptr<Model> m;
  switch (*kind) {
    case ModelKind::kAiLstm:
    case ModelKind::kSpatialAiLstm: {
      AiLstmConfig c;
      c.joints = config_size(ckpt, "joints");
      c.state_size = config_size(ckpt, "state_size");
      c.layers = config_size(ckpt, "layers");
      c.frames = config_size(ckpt, "frames");
      c.classes = config_size(ckpt, "classes");
      c.spatial = config_size(ckpt, "spatial") != 0;
      m = std::make_unique<AiLstmModel>(c);
      break;
    }
    case ModelKind::kCnn3d:
      m = std::make_unique<HandCnnModel>(cnn_config_from(ckpt));
      break;
    case ModelKind::kBaseline:
      m = std::make_unique<BaselineModel>(config_size(ckpt, "features"),
                                          config_size(ckpt, "classes"));
      break;
    case ModelKind::kMaxFusion:
      break;
  }
  if (m->num_classes() != ckpt.vocabulary.size()) {
    fail(ErrorCode::kFormat, "checkpoint vocabulary size does not match its class count");
  }
  nn::import_params(m->parameters(), ckpt.tensors);
  return m;
}

Hyperparams hyperparams_from_checkpoint(const nn::Checkpoint& ckpt) {
  Hyperparams hp;
  hp.learning_rate = ckpt.hyperparam("learning_rate", hp.learning_rate_for(ModelKind::kAiLstm));
  hp.l2_beta = ckpt.hyperparam("l2_beta", hp.l2_beta);
  hp.dropout_keep = ckpt.hyperparam("dropout_keep", hp.dropout_keep);
  hp.epochs = static_cast<std::size_t>(ckpt.hyperparam("epochs", static_cast<double>(hp.epochs)));
  hp.batch_size =
      static_cast<std::size_t>(ckpt.hyperparam("batch_size", static_cast<double>(hp.batch_size)));
  hp.adam.beta1 = ckpt.hyperparam("adam_beta1", hp.adam.beta1);
  hp.adam.beta2 = ckpt.hyperparam("adam_beta2", hp.adam.beta2);
  hp.adam.epsilon = ckpt.hyperparam("adam_epsilon", hp.adam.epsilon);
  hp.seed = static_cast<std::uint64_t>(ckpt.hyperparam("seed", 0.0));
  hp.grad_clip = ckpt.hyperparam("grad_clip", hp.grad_clip);
  return hp;
}

ModelSpec spec_from_checkpoints(const std::vector<nn::Checkpoint>& ckpts) {
  require(ckpts.size() == 1 || ckpts.size() == 2, "expected one or two checkpoints",
          ErrorCode::kUsage);
  ModelSpec spec;
  for (const nn::Checkpoint& c : ckpts) {
    const auto kind = parse_model_kind(c.arch);
    if (!kind) fail(ErrorCode::kFormat, "unknown checkpoint architecture '" + c.arch + "'");
    if (*kind == ModelKind::kAiLstm || *kind == ModelKind::kSpatialAiLstm) {
      spec.state_size = config_size(c, "state_size");
      spec.lstm_layers = config_size(c, "layers");
      spec.frames = config_size(c, "frames");
    } else if (*kind == ModelKind::kCnn3d) {
      spec.cnn = cnn_config_from(c);
    }
    spec.kind = *kind;
  }
  if (ckpts.size() == 2) {
    const auto a = parse_model_kind(ckpts[0].arch), b = parse_model_kind(ckpts[1].arch);
    const bool pair = (a == ModelKind::kAiLstm && b == ModelKind::kCnn3d) ||
                      (a == ModelKind::kCnn3d && b == ModelKind::kAiLstm);
    require(pair, "fusion needs one ai-lstm and one cnn3d checkpoint", ErrorCode::kUsage);
    spec.kind = ModelKind::kMaxFusion;
  }
  return spec;
}

std::shared_ptr<const Scorer> scorer_from_checkpoints(const std::vector<nn::Checkpoint>& ckpts) {
  require(ckpts.size() == 1 || ckpts.size() == 2, "expected one or two checkpoints",
          ErrorCode::kUsage);
  if (ckpts.size() == 1) return model_from_checkpoint(ckpts[0]);
  if (ckpts[0].vocabulary != ckpts[1].vocabulary) {
    fail(ErrorCode::kMismatch, "fusion checkpoints have different class vocabularies");
  }
  std::shared_ptr<const Model> a = model_from_checkpoint(ckpts[0]);
  std::shared_ptr<const Model> b = model_from_checkpoint(ckpts[1]);
  if (a->kind() == ModelKind::kCnn3d && b->kind() != ModelKind::kCnn3d) std::swap(a, b);
  return std::make_shared<FusionModel>(a, b);
}

nn::GradcheckResult gradcheck_model(Model& model, const Batch& batch, double l2_beta,
                                    const nn::GradcheckOptions& options) {
  const nn::ParamList params = model.parameters();
  nn::ParamList trainable;
  for (const nn::ParamRef& p : params) {
    if (p.trainable) trainable.push_back(p);
  }
  return nn::finite_diff_gradcheck(
      trainable, [&] { return model.loss(batch, l2_beta); },
      [&] { model.loss_and_grad(batch, StepOptions{l2_beta, 1.0, nullptr, nullptr}); }, options);
}

}  // namespace signrec::models
