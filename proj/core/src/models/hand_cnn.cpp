// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/hand_cnn.hpp"

#include "signrec/error.hpp"
#include "signrec/nn/dropout.hpp"

namespace signrec::models {
namespace {

constexpr const char* kSideNames[2] = {"left", "right"};

void relu_inplace(Tensor& t) {
  for (double& v : t.data()) v = v > 0.0 ? v : 0.0;
}

void relu_backward(Tensor& d, const Tensor& activation) {
  auto a = activation.data();
  auto g = d.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (a[i] <= 0.0) g[i] = 0.0;
  }
}

nn::Matrix relu(const nn::Matrix& m) { return m.cwiseMax(0.0); }

std::string extent_string(const nn::Extent3& e) {
  return std::to_string(e[0]) + "x" + std::to_string(e[1]) + "x" + std::to_string(e[2]);
}

}  // namespace

std::vector<Shape> HandCnnConfig::layer_shapes() const {
  require(input.size() == 4, "CNN input shape must be F x H x W x C");
  std::vector<Shape> out;
  Shape s = input;
  for (std::size_t i = 0; i < 4; ++i) {
    s = nn::conv3d_output_shape(s, convs[i].kernel, convs[i].channels);
    out.push_back(s);
    if (i == 1 || i == 3) {
      s = nn::pool3d_output_shape(s, pool, pool);
      out.push_back(s);
    }
  }
  return out;
}

std::size_t HandCnnConfig::flat_size() const { return shape_size(layer_shapes().back()); }

void HandCnnConfig::validate() const {
  require(classes >= 2, "CNN needs at least two classes");
  require(fc1 > 0 && fc2 > 0, "CNN dense sizes must be positive");
  for (const ConvSpec& c : convs) {
    require(c.channels > 0, "CNN conv channels must be positive");
    require(c.kernel[0] > 0 && c.kernel[1] > 0 && c.kernel[2] > 0, "CNN kernels must be positive");
  }
  const auto shapes = layer_shapes();
  if (shape_size(shapes.back()) == 0) {
    fail(ErrorCode::kInvalidArgument,
         "CNN configuration collapses input " + shape_string(input) + " to " +
             shape_string(shapes.back()));
  }
}

HandCnnModel::HandCnnModel(const HandCnnConfig& config) : config_(config) {
  config_.validate();
  const std::size_t flat = config_.flat_size();
  for (Stream& s : streams_) {
    std::size_t cin = config_.input[3];
    for (std::size_t i = 0; i < 4; ++i) {
      s.conv[i] = nn::Conv3dLayer(config_.convs[i].kernel, cin, config_.convs[i].channels);
      cin = config_.convs[i].channels;
    }
    s.fc1 = nn::DenseParams(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(config_.fc1));
    s.fc2 = nn::DenseParams(static_cast<Eigen::Index>(config_.fc1),
                            static_cast<Eigen::Index>(config_.fc2));
  }
  head_ = nn::DenseParams(static_cast<Eigen::Index>(2 * config_.fc2),
                          static_cast<Eigen::Index>(config_.classes));
}

HandCnnModel::HandCnnModel(const HandCnnConfig& config, Rng& init) : HandCnnModel(config) {
  for (Stream& s : streams_) {
    for (auto& c : s.conv) c.initialize(init);
    s.fc1.initialize(init);
    s.fc2.initialize(init);
  }
  head_.initialize(init);
}

nn::ParamList HandCnnModel::parameters() {
  nn::ParamList out;
  for (std::size_t side = 0; side < 2; ++side) {
    const std::string p = kSideNames[side];
    for (std::size_t i = 0; i < 4; ++i) {
      streams_[side].conv[i].append_to(out, p + ".conv" + std::to_string(i + 1) + ".");
    }
    streams_[side].fc1.append_to(out, p + ".fc1.");
    streams_[side].fc2.append_to(out, p + ".fc2.");
  }
  head_.append_to(out, "head.");
  return out;
}

void HandCnnModel::check_volume(const HandVolume& v) const {
  if (v.tensor().shape() != config_.input) {
    fail(ErrorCode::kInvalidArgument, "hand volume is " + shape_string(v.tensor().shape()) +
                                          ", model expects " + shape_string(config_.input));
  }
}

struct HandCnnModel::StreamTape {
  std::array<nn::Conv3dCache, 4> caches;
  std::array<Tensor, 4> acts;
  std::array<nn::PoolResult, 2> pools;
};

namespace {

// Runs one stream's conv stack; the tape is filled when non-null.
template <typename Tape>
Tensor conv_stack(const HandCnnModel::Stream& s, const nn::Extent3& pool, const Tensor& x,
                  Tape* tape) {
  Tensor cur = x;
  for (std::size_t i = 0; i < 4; ++i) {
    cur = nn::conv3d_forward(cur, s.conv[i], tape ? &tape->caches[i] : nullptr);
    relu_inplace(cur);
    if (i == 1 || i == 3) {
      nn::PoolResult pr = nn::maxpool3d(cur, pool, pool);
      if (tape) {
        tape->acts[i] = std::move(cur);
        cur = pr.output;
        tape->pools[i / 2] = std::move(pr);
      } else {
        cur = std::move(pr.output);
      }
    } else if (tape) {
      tape->acts[i] = cur;
    }
  }
  return cur;
}

}  // namespace

nn::Vector HandCnnModel::conv_features(std::size_t side, const HandVolume& volume) const {
  check_volume(volume);
  const Tensor out =
      conv_stack<StreamTape>(streams_.at(side), config_.pool, volume.tensor(), nullptr);
  return Eigen::Map<const nn::Vector>(out.data().data(), static_cast<Eigen::Index>(out.size()));
}

nn::Matrix HandCnnModel::embed_pairs(
    const std::vector<std::pair<const HandVolume*, const HandVolume*>>& in) const {
  require(!in.empty(), "empty batch");
  const auto B = static_cast<Eigen::Index>(in.size());
  const auto flat = static_cast<Eigen::Index>(config_.flat_size());
  const auto F2 = static_cast<Eigen::Index>(config_.fc2);
  nn::Matrix emb(2 * F2, B);
  for (std::size_t side = 0; side < 2; ++side) {
    nn::Matrix feats(flat, B);
    for (Eigen::Index b = 0; b < B; ++b) {
      const auto& pair = in[static_cast<std::size_t>(b)];
      feats.col(b) = conv_features(side, side == 0 ? *pair.first : *pair.second);
    }
    const Stream& s = streams_[side];
    const nn::Matrix h1 = relu(nn::dense_forward(feats, s.fc1));
    emb.middleRows(static_cast<Eigen::Index>(side) * F2, F2) = relu(nn::dense_forward(h1, s.fc2));
  }
  return emb;
}

nn::Matrix HandCnnModel::embed(const Batch& batch) const {
  std::vector<std::pair<const HandVolume*, const HandVolume*>> in;
  in.reserve(batch.size());
  for (const Example* e : batch) in.emplace_back(&e->left_hand, &e->right_hand);
  return embed_pairs(in);
}

nn::Matrix HandCnnModel::predict(const Batch& batch) const {
  return nn::softmax_columns(nn::dense_forward(embed(batch), head_));
}

nn::Vector HandCnnModel::forward(const HandVolume& left, const HandVolume& right) const {
  return nn::softmax_columns(nn::dense_forward(embed_pairs({{&left, &right}}), head_)).col(0);
}

double HandCnnModel::sample_step(const Example& e, double scale, const StepOptions& options) {
  const bool drop = options.dropout_rng != nullptr && options.dropout_keep < 1.0;
  const auto F2 = static_cast<Eigen::Index>(config_.fc2);
  std::array<StreamTape, 2> tapes;
  std::array<nn::Vector, 2> flat, h1, fc2_in, mask2, h2;
  nn::Vector emb(2 * F2);
  for (std::size_t side = 0; side < 2; ++side) {
    const HandVolume& v = side == 0 ? e.left_hand : e.right_hand;
    check_volume(v);
    const Tensor out = conv_stack(streams_[side], config_.pool, v.tensor(), &tapes[side]);
    flat[side] = Eigen::Map<const nn::Vector>(out.data().data(), static_cast<Eigen::Index>(out.size()));
    const Stream& s = streams_[side];
    h1[side] = relu(nn::dense_forward(flat[side], s.fc1));
    fc2_in[side] = h1[side];
    if (drop) {
      mask2[side] = nn::dropout_mask(h1[side].rows(), 1, options.dropout_keep, *options.dropout_rng);
      fc2_in[side].array() *= mask2[side].array();
    }
    h2[side] = relu(nn::dense_forward(fc2_in[side], s.fc2));
    emb.segment(static_cast<Eigen::Index>(side) * F2, F2) = h2[side];
  }
  nn::Vector head_in = emb;
  nn::Vector head_mask;
  if (drop) {
    head_mask = nn::dropout_mask(emb.rows(), 1, options.dropout_keep, *options.dropout_rng);
    head_in.array() *= head_mask.array();
  }
  const nn::Matrix probs = nn::softmax_columns(nn::dense_forward(head_in, head_));
  const int label = e.label;
  const double loss = nn::mean_cross_entropy(probs, std::span<const int>(&label, 1));
  if (options.correct && nn::argmax(probs.col(0)) == label) ++*options.correct;

  nn::Matrix d_logits = nn::cross_entropy_grad(probs, std::span<const int>(&label, 1)) * scale;
  nn::Vector d_emb = nn::dense_backward(head_in, d_logits, head_);
  if (drop) d_emb.array() *= head_mask.array();
  for (std::size_t side = 0; side < 2; ++side) {
    Stream& s = streams_[side];
    nn::Vector d_h2 = d_emb.segment(static_cast<Eigen::Index>(side) * F2, F2);
    d_h2.array() *= (h2[side].array() > 0.0).cast<double>();
    nn::Vector d_h1 = nn::dense_backward(fc2_in[side], d_h2, s.fc2);
    if (drop) d_h1.array() *= mask2[side].array();
    d_h1.array() *= (h1[side].array() > 0.0).cast<double>();
    const nn::Vector d_flat = nn::dense_backward(flat[side], d_h1, s.fc1);

    StreamTape& tape = tapes[side];
    Tensor d(tape.pools[1].output.shape(),
             std::vector<double>(d_flat.data(), d_flat.data() + d_flat.size()));
    for (std::size_t i = 4; i-- > 0;) {
      if (i == 1 || i == 3) d = nn::maxpool3d_backward(d, tape.pools[i / 2]);
      relu_backward(d, tape.acts[i]);
      d = nn::conv3d_backward(d, tape.caches[i], s.conv[i], i > 0);
    }
  }
  return loss;
}

double HandCnnModel::loss_and_grad(const Batch& batch, const StepOptions& options) {
  require(!batch.empty(), "empty batch");
  nn::ParamList params = parameters();
  nn::zero_grads(params);
  if (options.correct) *options.correct = 0;
  const double scale = 1.0 / static_cast<double>(batch.size());
  double data_loss = 0.0;
  for (const Example* e : batch) data_loss += sample_step(*e, scale, options);
  nn::add_l2_gradient(params, options.l2_beta);
  return data_loss * scale + options.l2_beta * nn::l2_sum(params);
}

std::vector<std::pair<std::string, std::string>> HandCnnModel::config() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("input", std::to_string(config_.input[0]) + "x" + std::to_string(config_.input[1]) +
                                "x" + std::to_string(config_.input[2]) + "x" +
                                std::to_string(config_.input[3]));
  for (std::size_t i = 0; i < 4; ++i) {
    out.emplace_back("conv" + std::to_string(i + 1),
                     extent_string(config_.convs[i].kernel) + "x" +
                         std::to_string(config_.convs[i].channels));
  }
  out.emplace_back("pool", extent_string(config_.pool));
  out.emplace_back("fc1", std::to_string(config_.fc1));
  out.emplace_back("fc2", std::to_string(config_.fc2));
  out.emplace_back("classes", std::to_string(config_.classes));
  return out;
}

nn::Vector cnn_forward(const HandVolume& left, const HandVolume& right, const HandCnnModel& model) {
  return model.forward(left, right);
}

}  // namespace signrec::models
