// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_PREPROCESS_HPP_
#define SIGNREC_PREPROCESS_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "signrec/dataset.hpp"
#include "signrec/hand_volume.hpp"
#include "signrec/joints.hpp"
#include "signrec/tensor.hpp"

namespace signrec {

/// T x J x 3 joint coordinates (time, joint, x/y/z), meters.
class SkelTensor {
 public:
  SkelTensor() = default;
  SkelTensor(std::size_t frames, std::size_t joints);
  explicit SkelTensor(Tensor data);

  std::size_t frames() const { return data_.empty() ? 0 : data_.dim(0); }
  std::size_t joints() const { return data_.empty() ? 0 : data_.dim(1); }

  double& operator()(std::size_t t, std::size_t j, std::size_t axis) {
    return data_(t, j, axis);
  }
  double operator()(std::size_t t, std::size_t j, std::size_t axis) const {
    return data_(t, j, axis);
  }

  const Tensor& tensor() const { return data_; }
  Tensor& tensor() { return data_; }

  friend bool operator==(const SkelTensor&, const SkelTensor&) = default;

 private:
  Tensor data_;
};

inline constexpr std::size_t kDefaultFrames = 20;
inline constexpr std::size_t kAugmentedJoints = 16;

struct SegmentParams {
  double velocity_threshold = 0.01;  // meters / frame
  std::size_t smoothing_window = 5;  // frames, odd
  std::size_t min_segment_len = 10;
  std::size_t merge_gap = 8;

  void validate() const;
};

/// Half-open frame range [start, end).
struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Per-frame wrist speed: max over both wrists of the central-difference
/// velocity norm, then a centered moving average of width `window`.
std::vector<double> wrist_speed(std::span<const SkeletonFrame> frames,
                                std::size_t window);

std::vector<Segment> segment_stream(std::span<const SkeletonFrame> frames,
                                    const SegmentParams& params);

SkelTensor select_joints(const SignSample& sample, std::span<const JointId> joints);
SkelTensor select_joints(const SignSample& sample);  // kArmJoints

/// Frame indices used by resample_uniform: round(linspace) when shrinking,
/// floor(k * T / target) repetition when growing.
std::vector<std::size_t> resample_indices(std::size_t frames, std::size_t target);
SkelTensor resample_uniform(const SkelTensor& x, std::size_t target = kDefaultFrames);

/// Origin transfer: 6 arm joints -> 16 joints (original, minus left wrist,
/// minus right wrist). Requires the kArmJoints order and T = expected_frames.
SkelTensor spatial_augment(const SkelTensor& x,
                           std::size_t expected_frames = kDefaultFrames);

using AxisMatrices = std::array<Eigen::MatrixXd, 3>;  // each T x J
AxisMatrices axis_split(const SkelTensor& x);
SkelTensor axis_merge(const AxisMatrices& axes);

std::vector<std::size_t> select_low_motion_frames(const SignSample& sample,
                                                  std::size_t count = 15,
                                                  std::size_t smoothing_window = 5);

/// Image frames addressed by sample frame index. Pixel values in [0, 1].
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::size_t height() const = 0;
  virtual std::size_t width() const = 0;
  virtual std::size_t channels() const { return 3; }
  virtual double pixel(std::size_t frame, std::size_t row, std::size_t col,
                       std::size_t channel) const = 0;
};

/// Frames held in memory as H x W x C tensors.
class ImageStackSource final : public FrameSource {
 public:
  explicit ImageStackSource(std::vector<Tensor> images);
  std::size_t height() const override;
  std::size_t width() const override;
  std::size_t channels() const override;
  double pixel(std::size_t frame, std::size_t row, std::size_t col,
               std::size_t channel) const override;

 private:
  std::vector<Tensor> images_;
};

struct HandPatchConfig {
  std::size_t patch = 100;   // crop side in source pixels
  std::size_t out_hw = 32;   // resized side
  std::size_t frames = 15;
  std::size_t smoothing_window = 5;
};

/// Crops patch x patch windows centered on each wrist's 2D position at the
/// low-motion frames, zero-padding outside the image, and resizes bilinearly.
HandVolumePair build_hand_volumes(const SignSample& sample, const FrameSource& source,
                                  const HandPatchConfig& config);

/// Crop + resize of one frame around (u, v); exposed for tests.
void crop_resize(const FrameSource& source, std::size_t frame, double u, double v,
                 std::size_t patch, std::size_t out_hw, HandVolume& dst,
                 std::size_t dst_frame);

}  // namespace signrec

#endif  // SIGNREC_PREPROCESS_HPP_
