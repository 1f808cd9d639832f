// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_EVAL_EVALUATE_HPP_
#define SIGNREC_EVAL_EVALUATE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signrec/models/model.hpp"

namespace signrec::eval {

using Confusion = std::vector<std::vector<std::size_t>>;  // [true][predicted]

struct EvalReport {
  std::string subject;
  std::optional<double> fraction;  // adaptation folds only
  std::size_t n = 0;
  double accuracy = 0.0;
  Confusion confusion;
  std::vector<double> per_class_accuracy;  // 0 for classes absent from the test set

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Builds a report from true and predicted labels.
EvalReport make_report(const std::vector<int>& truth, const std::vector<int>& predicted,
                       std::size_t classes, std::string subject);

/// Argmax predictions, scored in chunks of at most `chunk` examples.
std::vector<int> predict_labels(const models::Scorer& scorer,
                                const std::vector<models::Example>& examples,
                                std::size_t chunk = 256);

EvalReport evaluate(const models::Scorer& scorer, const std::vector<models::Example>& test,
                    std::string subject);

/// Accuracy on samples of classes a and b when the decision is restricted to
/// {a, b}. Returns nullopt when no such samples exist.
std::optional<double> pairwise_accuracy(const models::Scorer& scorer,
                                        const std::vector<models::Example>& test, int a, int b);

}  // namespace signrec::eval

#endif  // SIGNREC_EVAL_EVALUATE_HPP_
