// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/examples.hpp"

#include "signrec/error.hpp"
#include "signrec/models/features.hpp"

namespace signrec::models {

InputNeeds input_needs(ModelKind kind) {
  InputNeeds n;
  switch (kind) {
    case ModelKind::kAiLstm: n.joints = true; break;
    case ModelKind::kSpatialAiLstm: n.augmented = true; break;
    case ModelKind::kCnn3d: n.hands = true; break;
    case ModelKind::kMaxFusion: n.joints = n.hands = true; break;
    case ModelKind::kBaseline: n.features = true; break;
  }
  return n;
}

Example make_example(const SignSample& sample, InputNeeds needs, std::size_t frames) {
  Example e;
  e.label = sample.class_label;
  e.subject = sample.subject_id;
  if (needs.joints || needs.augmented || needs.features) {
    const SkelTensor raw = select_joints(sample);
    if (needs.features) e.features = extract_features126(raw);
    if (needs.joints || needs.augmented) {
      SkelTensor resampled = resample_uniform(raw, frames);
      if (needs.augmented) e.augmented = spatial_augment(resampled, frames);
      if (needs.joints) e.joints = std::move(resampled);
    }
  }
  if (needs.hands) {
    if (!sample.hand_volumes) {
      fail(ErrorCode::kMissingModality, "sample " + sample.subject_id + "/" +
                                            std::to_string(sample.class_label) + "/" +
                                            sample.stem + " has no hand volumes");
    }
    e.left_hand = sample.hand_volumes->left;
    e.right_hand = sample.hand_volumes->right;
  }
  return e;
}

std::vector<Example> make_examples(const Dataset& dataset, InputNeeds needs,
                                   std::size_t frames) {
  std::vector<Example> out;
  out.reserve(dataset.samples.size());
  for (const SamplePtr& s : dataset.samples) out.push_back(make_example(*s, needs, frames));
  return out;
}

Batch batch_of(const std::vector<Example>& examples) {
  Batch b;
  b.reserve(examples.size());
  for (const Example& e : examples) b.push_back(&e);
  return b;
}

}  // namespace signrec::models
