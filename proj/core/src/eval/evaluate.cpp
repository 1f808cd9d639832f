// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/eval/evaluate.hpp"

#include <algorithm>

#include "signrec/error.hpp"
#include "signrec/nn/dense.hpp"

namespace signrec::eval {
namespace {

template <typename Fn>
void for_each_chunk(const std::vector<models::Example>& examples, std::size_t chunk, Fn&& fn) {
  for (std::size_t begin = 0; begin < examples.size(); begin += chunk) {
    const std::size_t end = std::min(examples.size(), begin + chunk);
    models::Batch batch;
    batch.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) batch.push_back(&examples[i]);
    fn(batch);
  }
}

}  // namespace

EvalReport make_report(const std::vector<int>& truth, const std::vector<int>& predicted,
                       std::size_t classes, std::string subject) {
  require(truth.size() == predicted.size(), "label and prediction counts differ");
  if (truth.empty()) fail(ErrorCode::kEmptyDataset, "test set for '" + subject + "' is empty");
  EvalReport r;
  r.subject = std::move(subject);
  r.n = truth.size();
  r.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i], p = predicted[i];
    require(t >= 0 && static_cast<std::size_t>(t) < classes && p >= 0 &&
                static_cast<std::size_t>(p) < classes,
            "label out of range in evaluation");
    ++r.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
  }
  std::size_t hits = 0;
  r.per_class_accuracy.assign(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    std::size_t row = 0;
    for (std::size_t v : r.confusion[c]) row += v;
    hits += r.confusion[c][c];
    if (row > 0) {
      r.per_class_accuracy[c] = static_cast<double>(r.confusion[c][c]) / static_cast<double>(row);
    }
  }
  r.accuracy = static_cast<double>(hits) / static_cast<double>(r.n);
  return r;
}

std::vector<int> predict_labels(const models::Scorer& scorer,
                                const std::vector<models::Example>& examples, std::size_t chunk) {
  require(chunk > 0, "chunk size must be positive");
  std::vector<int> out;
  out.reserve(examples.size());
  for_each_chunk(examples, chunk, [&](const models::Batch& batch) {
    const nn::Matrix probs = scorer.predict(batch);
    for (Eigen::Index b = 0; b < probs.cols(); ++b) {
      out.push_back(static_cast<int>(nn::argmax(probs.col(b))));
    }
  });
  return out;
}

EvalReport evaluate(const models::Scorer& scorer, const std::vector<models::Example>& test,
                    std::string subject) {
  if (test.empty()) fail(ErrorCode::kEmptyDataset, "test set for '" + subject + "' is empty");
  std::vector<int> truth;
  truth.reserve(test.size());
  for (const models::Example& e : test) truth.push_back(e.label);
  return make_report(truth, predict_labels(scorer, test), scorer.num_classes(), std::move(subject));
}

std::optional<double> pairwise_accuracy(const models::Scorer& scorer,
                                        const std::vector<models::Example>& test, int a, int b) {
  std::vector<models::Example> subset;
  for (const models::Example& e : test) {
    if (e.label == a || e.label == b) subset.push_back(e);
  }
  if (subset.empty()) return std::nullopt;
  std::size_t hits = 0;
  for_each_chunk(subset, 256, [&](const models::Batch& batch) {
    const nn::Matrix probs = scorer.predict(batch);
    for (Eigen::Index j = 0; j < probs.cols(); ++j) {
      const double pa = probs(a, j), pb = probs(b, j);
      const int pick = (pb > pa || (pb == pa && b < a)) ? b : a;
      if (pick == batch[static_cast<std::size_t>(j)]->label) ++hits;
    }
  });
  return static_cast<double>(hits) / static_cast<double>(subset.size());
}

}  // namespace signrec::eval
