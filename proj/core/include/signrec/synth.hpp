// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_SYNTH_HPP_
#define SIGNREC_SYNTH_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "signrec/dataset.hpp"
#include "signrec/preprocess.hpp"

namespace signrec {

struct SubjectVariation {
  std::pair<double, double> scale_range{0.9, 1.1};
  double offset_range = 0.10;  // meters, symmetric per axis
  std::pair<double, double> speed_range{0.85, 1.15};
  double brightness_range = 0.06;  // hand texture brightness shift
  /// Per-signer rendition of each sign: relative amplitude change and phase
  /// shift (in units of pi) of every motion wave, drawn per (subject, sign).
  double style = 0.0;
};

/// Parametric stand-in for a recorded sign corpus.
struct SynthConfig {
  std::size_t num_classes = 10;
  std::size_t num_subjects = 4;
  std::size_t samples_per_class_per_subject = 5;
  std::pair<std::size_t, std::size_t> frame_length_range{30, 60};
  double noise_sigma = 0.004;  // meters
  SubjectVariation subject_variation;
  /// Pairs sharing one motion prototype; only hand textures tell them apart.
  std::vector<std::pair<int, int>> twin_class_pairs;
  /// Pairs sharing one motion prototype except for a constant displacement of
  /// the right arm: per-joint motion is identical, inter-joint offsets differ.
  std::vector<std::pair<int, int>> relation_class_pairs;
  double relation_offset = 0.12;  // meters
  /// Per-sample whole-body translation (signer position), meters per axis.
  double position_jitter = 0.0;
  bool with_hands = true;
  std::size_t hand_frames = 15;
  std::size_t patch = 100;
  std::size_t patch_out = 32;
  double texture_noise = 0.03;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

/// Per-class procedural hand appearance: base color plus an oriented grating.
struct HandTexture {
  std::array<double, 3> base{};
  std::array<double, 3> amplitude{};
  double angle = 0.0;       // radians
  double wavelength = 8.0;  // pixels
  double phase = 0.0;

  static HandTexture uniform(double gray);
};

struct CameraIntrinsics {
  double fx = 1050.0, fy = 1050.0, cx = 960.0, cy = 540.0;
  std::size_t width = 1920, height = 1080;

  Point2 project(const Point3& p) const;
};

/// Renders each pixel with the texture of the nearer wrist, in coordinates
/// relative to that wrist's 2D position.
class SyntheticFrameSource final : public FrameSource {
 public:
  SyntheticFrameSource(const SignSample& sample, HandTexture left, HandTexture right,
                       CameraIntrinsics camera = {}, double brightness = 0.0,
                       double noise = 0.0, std::uint64_t noise_seed = 0);

  std::size_t height() const override { return camera_.height; }
  std::size_t width() const override { return camera_.width; }
  double pixel(std::size_t frame, std::size_t row, std::size_t col,
               std::size_t channel) const override;

 private:
  std::vector<std::array<Point2, 2>> wrists_;
  std::array<HandTexture, 2> textures_;
  CameraIntrinsics camera_;
  double brightness_;
  double noise_;
  std::uint64_t noise_seed_;
};

/// Deterministic function of the config. Sample order is subject-major, then
/// class, then index, matching the on-disk lexicographic order.
Dataset generate_synthetic(const SynthConfig& config);

std::string synth_subject_name(std::size_t index);
std::string synth_class_name(std::size_t index);

}  // namespace signrec

#endif  // SIGNREC_SYNTH_HPP_
