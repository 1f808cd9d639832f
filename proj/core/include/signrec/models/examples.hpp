// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_EXAMPLES_HPP_
#define SIGNREC_MODELS_EXAMPLES_HPP_

#include <cstddef>
#include <vector>

#include "signrec/dataset.hpp"
#include "signrec/models/model.hpp"

namespace signrec::models {

struct InputNeeds {
  bool joints = false;
  bool augmented = false;
  bool hands = false;
  bool features = false;
};

InputNeeds input_needs(ModelKind kind);

/// Builds model inputs for one sample. Hands require stored hand volumes
/// (kMissingModality otherwise).
Example make_example(const SignSample& sample, InputNeeds needs,
                     std::size_t frames = kDefaultFrames);

std::vector<Example> make_examples(const Dataset& dataset, InputNeeds needs,
                                   std::size_t frames = kDefaultFrames);

Batch batch_of(const std::vector<Example>& examples);

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_EXAMPLES_HPP_
