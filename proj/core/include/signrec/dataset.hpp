// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_DATASET_HPP_
#define SIGNREC_DATASET_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "signrec/hand_volume.hpp"
#include "signrec/joints.hpp"

namespace signrec {

using Point3 = std::array<double, 3>;
using Point2 = std::array<double, 2>;

struct SkeletonFrame {
  double timestamp = 0.0;                       // seconds
  std::array<Point3, kJointCount> joints3d{};   // camera space, meters
  std::optional<std::array<Point2, kJointCount>> joints2d;  // pixels (u, v)

  const Point3& joint(JointId id) const { return joints3d[index_of(id)]; }
  friend bool operator==(const SkeletonFrame&, const SkeletonFrame&) = default;
};

/// Sample identity: (subject, class, file stem). Used by split audits.
struct SampleKey {
  std::string subject_id;
  int class_label = 0;
  std::string stem;

  friend auto operator<=>(const SampleKey&, const SampleKey&) = default;
};

struct SignSample {
  std::string subject_id;
  int class_label = 0;
  std::string stem;
  double fps = 30.0;
  std::vector<SkeletonFrame> frames;
  std::optional<HandVolumePair> hand_volumes;

  SampleKey key() const { return {subject_id, class_label, stem}; }
  friend bool operator==(const SignSample&, const SignSample&) = default;
};

using SamplePtr = std::shared_ptr<const SignSample>;

/// Immutable once built; samples are shared between split views.
struct Dataset {
  std::vector<std::string> vocabulary;
  std::vector<std::string> subjects;
  std::vector<SamplePtr> samples;

  std::size_t num_classes() const { return vocabulary.size(); }
  bool has_hand_volumes() const;
  /// Throws on any schema violation (unknown subject, bad label, duplicate
  /// identity, non-finite coordinates, unordered timestamps).
  void validate() const;
};

/// Deep equality of two datasets (vocabulary, subjects, sample contents).
bool same_contents(const Dataset& a, const Dataset& b);

/// Checks a single sample; returns an empty string when valid, else a reason.
std::string check_sample(const SignSample& sample, std::size_t num_classes);

struct LoadResult {
  Dataset dataset;
  std::vector<std::string> warnings;
};

/// Reads <root>/<subject>/<class>/<stem>.skel.json (+ optional <stem>.hpv).
LoadResult load_dataset(const std::filesystem::path& root);
void save_dataset(const Dataset& dataset, const std::filesystem::path& root);

std::string encode_skeleton_json(const SignSample& sample);
/// Parses a .skel.json document into fps + frames.
void decode_skeleton_json(const std::string& text, SignSample& sample);

/// Reads a frame stream: either a .skel.json object or a bare JSON array of
/// frame objects.
std::vector<SkeletonFrame> read_frame_stream(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace signrec

#endif  // SIGNREC_DATASET_HPP_
