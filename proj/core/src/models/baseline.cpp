// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/baseline.hpp"

#include <cmath>

#include "signrec/error.hpp"

namespace signrec::models {

BaselineModel::BaselineModel(std::size_t feature_dim, std::size_t classes)
    : dim_(feature_dim),
      classes_(classes),
      mean_(static_cast<Eigen::Index>(feature_dim), 1),
      stddev_(static_cast<Eigen::Index>(feature_dim), 1),
      head_(static_cast<Eigen::Index>(feature_dim), static_cast<Eigen::Index>(classes)) {
  require(feature_dim > 0, "baseline feature dimension must be positive");
  require(classes >= 2, "baseline needs at least two classes");
  stddev_.value.setOnes();
}

BaselineModel::BaselineModel(std::size_t feature_dim, std::size_t classes, Rng& init)
    : BaselineModel(feature_dim, classes) {
  head_.initialize(init);
}

void BaselineModel::fit_standardizer(const Batch& batch) {
  require(!batch.empty(), "cannot standardize an empty training set");
  const auto D = static_cast<Eigen::Index>(dim_);
  nn::Vector sum = nn::Vector::Zero(D);
  for (const Example* e : batch) {
    require(e->features.size() == D, "feature dimension mismatch");
    sum += e->features;
  }
  const double n = static_cast<double>(batch.size());
  const nn::Vector mu = sum / n;
  nn::Vector var = nn::Vector::Zero(D);
  for (const Example* e : batch) var += (e->features - mu).array().square().matrix();
  var /= n;
  mean_.value.col(0) = mu;
  for (Eigen::Index i = 0; i < D; ++i) {
    const double s = std::sqrt(var[i]);
    stddev_.value(i, 0) = s < 1e-12 ? 1.0 : s;
  }
}

nn::Vector BaselineModel::standardize(const nn::Vector& features) const {
  require(features.size() == static_cast<Eigen::Index>(dim_), "feature dimension mismatch");
  return ((features - mean_.value.col(0)).array() / stddev_.value.col(0).array()).matrix();
}

nn::Matrix BaselineModel::inputs(const Batch& batch) const {
  require(!batch.empty(), "empty batch");
  nn::Matrix x(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(batch.size()));
  for (std::size_t b = 0; b < batch.size(); ++b) {
    x.col(static_cast<Eigen::Index>(b)) = standardize(batch[b]->features);
  }
  return x;
}

nn::ParamList BaselineModel::parameters() {
  nn::ParamList out;
  out.push_back({"standardizer.mean", &mean_, false, false});
  out.push_back({"standardizer.std", &stddev_, false, false});
  head_.append_to(out, "head.");
  return out;
}

nn::Matrix BaselineModel::predict(const Batch& batch) const {
  return nn::softmax_columns(nn::dense_forward(inputs(batch), head_));
}

double BaselineModel::loss_and_grad(const Batch& batch, const StepOptions& options) {
  nn::ParamList params = parameters();
  nn::zero_grads(params);
  const std::vector<int> labels = labels_of(batch);
  const nn::Matrix x = inputs(batch);
  const nn::Matrix probs = nn::softmax_columns(nn::dense_forward(x, head_));
  if (options.correct) *options.correct = count_correct(probs, labels);
  nn::dense_backward(x, nn::cross_entropy_grad(probs, labels), head_);
  nn::add_l2_gradient(params, options.l2_beta);
  return nn::mean_cross_entropy(probs, labels) + options.l2_beta * nn::l2_sum(params);
}

std::vector<std::pair<std::string, std::string>> BaselineModel::config() const {
  return {{"features", std::to_string(dim_)}, {"classes", std::to_string(classes_)}};
}

}  // namespace signrec::models
