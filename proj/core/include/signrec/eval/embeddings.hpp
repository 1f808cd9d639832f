// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_EVAL_EMBEDDINGS_HPP_
#define SIGNREC_EVAL_EMBEDDINGS_HPP_

#include <string>
#include <vector>

#include "signrec/dataset.hpp"
#include "signrec/models/ai_lstm.hpp"

namespace signrec::eval {

/// Head-input vectors (3S x N) of an AI-LSTM-family model.
nn::Matrix export_embeddings(const models::AiLstmModel& model,
                             const std::vector<models::Example>& examples);

/// `subject,label,e000,...` with one row per example.
std::string embeddings_csv(const nn::Matrix& embeddings,
                           const std::vector<models::Example>& examples);

struct FeatureRow {
  std::string subject;
  int label = 0;
  nn::Vector features;
};

/// 126-feature rows for every sample with at least 2 frames; shorter samples
/// are skipped and reported in `warnings`.
std::vector<FeatureRow> dataset_features(const Dataset& d, std::vector<std::string>* warnings);

/// `subject,label,f000..f125`, values printed with 17 significant digits.
std::string features_csv(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> parse_features_csv(const std::string& text);

}  // namespace signrec::eval

#endif  // SIGNREC_EVAL_EMBEDDINGS_HPP_
