// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "signrec/error.hpp"

namespace signrec {

SkelTensor::SkelTensor(std::size_t frames, std::size_t joints)
    : data_(Shape{frames, joints, 3}) {}

SkelTensor::SkelTensor(Tensor data) : data_(std::move(data)) {
  require(data_.rank() == 3 && data_.dim(2) == 3,
          "skeleton tensor must be T x J x 3, got " + shape_string(data_.shape()));
}

void SegmentParams::validate() const {
  require(velocity_threshold > 0.0, "velocity_threshold must be positive");
  require(smoothing_window > 0 && smoothing_window % 2 == 1,
          "smoothing_window must be a positive odd number");
  require(min_segment_len > 0, "min_segment_len must be positive");
  require(merge_gap > 0, "merge_gap must be positive");
}

std::vector<double> wrist_speed(std::span<const SkeletonFrame> frames,
                                std::size_t window) {
  const std::size_t n = frames.size();
  std::vector<double> raw(n, 0.0);
  if (n >= 2) {
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t lo = t == 0 ? 0 : t - 1;
      const std::size_t hi = t + 1 == n ? t : t + 1;
      const double span = static_cast<double>(hi - lo);
      double best = 0.0;
      for (JointId wrist : {JointId::WristLeft, JointId::WristRight}) {
        const Point3& a = frames[lo].joint(wrist);
        const Point3& b = frames[hi].joint(wrist);
        double sq = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          const double d = (b[k] - a[k]) / span;
          sq += d * d;
        }
        best = std::max(best, std::sqrt(sq));
      }
      raw[t] = best;
    }
  }
  if (window <= 1) return raw;
  const std::size_t half = window / 2;
  std::vector<double> smooth(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t >= half ? t - half : 0;
    const std::size_t hi = std::min(n - 1, t + half);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += raw[k];
    smooth[t] = sum / static_cast<double>(hi - lo + 1);
  }
  return smooth;
}

std::vector<Segment> segment_stream(std::span<const SkeletonFrame> frames,
                                    const SegmentParams& params) {
  params.validate();
  require(frames.size() >= 2, "segment_stream needs at least 2 frames");
  const std::vector<double> speed = wrist_speed(frames, params.smoothing_window);

  std::vector<Segment> runs;
  for (std::size_t t = 0; t < speed.size();) {
    if (speed[t] < params.velocity_threshold) {
      ++t;
      continue;
    }
    Segment run{t, t};
    while (run.end < speed.size() && speed[run.end] >= params.velocity_threshold) ++run.end;
    t = run.end;
    if (!runs.empty() && run.start - runs.back().end < params.merge_gap) {
      runs.back().end = run.end;
    } else {
      runs.push_back(run);
    }
  }
  std::erase_if(runs, [&](const Segment& s) { return s.length() < params.min_segment_len; });
  return runs;
}

SkelTensor select_joints(const SignSample& sample, std::span<const JointId> joints) {
  require(!sample.frames.empty(), "sample has no frames");
  SkelTensor out(sample.frames.size(), joints.size());
  for (std::size_t t = 0; t < sample.frames.size(); ++t) {
    for (std::size_t j = 0; j < joints.size(); ++j) {
      const Point3& p = sample.frames[t].joint(joints[j]);
      for (std::size_t a = 0; a < 3; ++a) out(t, j, a) = p[a];
    }
  }
  return out;
}

SkelTensor select_joints(const SignSample& sample) {
  return select_joints(sample, kArmJoints);
}

std::vector<std::size_t> resample_indices(std::size_t frames, std::size_t target) {
  require(frames >= 1, "cannot resample an empty sequence");
  require(target >= 1, "resample target must be positive");
  std::vector<std::size_t> idx(target);
  if (frames >= target) {
    if (target == 1) return {0};
    // round-half-up of k * (T - 1) / (target - 1), in exact integer arithmetic
    const std::size_t num = frames - 1;
    const std::size_t den = target - 1;
    for (std::size_t k = 0; k < target; ++k) {
      idx[k] = (2 * k * num + den) / (2 * den);
      if (k > 0 && idx[k] <= idx[k - 1]) idx[k] = idx[k - 1] + 1;
    }
    // Tie shifting can only move indices right; pull the tail back in range.
    for (std::size_t k = target; k-- > 0;) {
      const std::size_t cap = frames - (target - k);
      if (idx[k] > cap) idx[k] = cap;
    }
  } else {
    for (std::size_t k = 0; k < target; ++k) idx[k] = k * frames / target;
  }
  return idx;
}

SkelTensor resample_uniform(const SkelTensor& x, std::size_t target) {
  require(x.frames() >= 1, "cannot resample an empty skeleton tensor");
  const std::vector<std::size_t> idx = resample_indices(x.frames(), target);
  SkelTensor out(target, x.joints());
  for (std::size_t t = 0; t < target; ++t) {
    for (std::size_t j = 0; j < x.joints(); ++j) {
      for (std::size_t a = 0; a < 3; ++a) out(t, j, a) = x(idx[t], j, a);
    }
  }
  return out;
}

SkelTensor spatial_augment(const SkelTensor& x, std::size_t expected_frames) {
  require(x.joints() == kArmJoints.size(),
          "spatial_augment expects 6 joints, got " + std::to_string(x.joints()));
  require(x.frames() == expected_frames,
          "spatial_augment expects " + std::to_string(expected_frames) +
              " frames, got " + std::to_string(x.frames()));
  constexpr std::size_t kLeftWrist = 0;   // kArmJoints order
  constexpr std::size_t kRightWrist = 1;
  SkelTensor out(x.frames(), kAugmentedJoints);
  for (std::size_t t = 0; t < x.frames(); ++t) {
    std::size_t j_out = 0;
    for (std::size_t j = 0; j < 6; ++j, ++j_out) {
      for (std::size_t a = 0; a < 3; ++a) out(t, j_out, a) = x(t, j, a);
    }
    for (std::size_t origin : {kLeftWrist, kRightWrist}) {
      for (std::size_t j = 0; j < 6; ++j) {
        if (j == origin) continue;
        for (std::size_t a = 0; a < 3; ++a) {
          out(t, j_out, a) = x(t, j, a) - x(t, origin, a);
        }
        ++j_out;
      }
    }
  }
  return out;
}

AxisMatrices axis_split(const SkelTensor& x) {
  AxisMatrices out;
  for (std::size_t a = 0; a < 3; ++a) {
    out[a].resize(static_cast<Eigen::Index>(x.frames()), static_cast<Eigen::Index>(x.joints()));
    for (std::size_t t = 0; t < x.frames(); ++t) {
      for (std::size_t j = 0; j < x.joints(); ++j) {
        out[a](static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = x(t, j, a);
      }
    }
  }
  return out;
}

SkelTensor axis_merge(const AxisMatrices& axes) {
  const auto frames = static_cast<std::size_t>(axes[0].rows());
  const auto joints = static_cast<std::size_t>(axes[0].cols());
  for (const auto& m : axes) {
    require(static_cast<std::size_t>(m.rows()) == frames &&
                static_cast<std::size_t>(m.cols()) == joints,
            "axis matrices differ in shape");
  }
  SkelTensor out(frames, joints);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t j = 0; j < joints; ++j) {
        out(t, j, a) = axes[a](static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j));
      }
    }
  }
  return out;
}

std::vector<std::size_t> select_low_motion_frames(const SignSample& sample,
                                                  std::size_t count,
                                                  std::size_t smoothing_window) {
  const std::size_t n = sample.frames.size();
  require(n >= 1, "sample has no frames");
  require(count >= 1, "frame count must be positive");
  if (n < count) return resample_indices(n, count);
  const std::vector<double> score = wrist_speed(sample.frames, smoothing_window);
  std::vector<std::size_t> out(count);
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t lo = b * n / count;
    const std::size_t hi = (b + 1) * n / count;
    std::size_t best = lo;
    for (std::size_t t = lo + 1; t < hi; ++t) {
      if (score[t] < score[best]) best = t;
    }
    out[b] = best;
  }
  return out;
}

ImageStackSource::ImageStackSource(std::vector<Tensor> images)
    : images_(std::move(images)) {
  require(!images_.empty(), "image stack is empty");
  for (const Tensor& img : images_) {
    require(img.rank() == 3 && img.shape() == images_.front().shape(),
            "images must share an H x W x C shape");
  }
}

std::size_t ImageStackSource::height() const { return images_.front().dim(0); }
std::size_t ImageStackSource::width() const { return images_.front().dim(1); }
std::size_t ImageStackSource::channels() const { return images_.front().dim(2); }

double ImageStackSource::pixel(std::size_t frame, std::size_t row, std::size_t col,
                               std::size_t channel) const {
  return images_.at(frame)(row, col, channel);
}

void crop_resize(const FrameSource& source, std::size_t frame, double u, double v,
                 std::size_t patch, std::size_t out_hw, HandVolume& dst,
                 std::size_t dst_frame) {
  const std::size_t channels = source.channels();
  const auto h = static_cast<long long>(source.height());
  const auto w = static_cast<long long>(source.width());
  const long long half = static_cast<long long>(patch / 2);
  const long long r0 = std::llround(v) - half;
  const long long c0 = std::llround(u) - half;

  std::vector<double> crop(patch * patch * channels, 0.0);
  for (std::size_t pr = 0; pr < patch; ++pr) {
    const long long r = r0 + static_cast<long long>(pr);
    if (r < 0 || r >= h) continue;
    for (std::size_t pc = 0; pc < patch; ++pc) {
      const long long c = c0 + static_cast<long long>(pc);
      if (c < 0 || c >= w) continue;
      for (std::size_t ch = 0; ch < channels; ++ch) {
        crop[(pr * patch + pc) * channels + ch] = source.pixel(
            frame, static_cast<std::size_t>(r), static_cast<std::size_t>(c), ch);
      }
    }
  }

  const double scale = static_cast<double>(patch) / static_cast<double>(out_hw);
  const double max_src = static_cast<double>(patch - 1);
  auto source_coord = [&](std::size_t i, std::size_t& i0, std::size_t& i1, double& frac) {
    const double s = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, max_src);
    i0 = static_cast<std::size_t>(std::floor(s));
    i1 = std::min(i0 + 1, patch - 1);
    frac = s - static_cast<double>(i0);
  };
  for (std::size_t y = 0; y < out_hw; ++y) {
    std::size_t y0, y1;
    double fy;
    source_coord(y, y0, y1, fy);
    for (std::size_t x = 0; x < out_hw; ++x) {
      std::size_t x0, x1;
      double fx;
      source_coord(x, x0, x1, fx);
      for (std::size_t ch = 0; ch < channels; ++ch) {
        auto at = [&](std::size_t r, std::size_t c) { return crop[(r * patch + c) * channels + ch]; };
        double value = at(y0, x0);
        if (fx != 0.0 || fy != 0.0) {
          value = (1 - fy) * ((1 - fx) * at(y0, x0) + fx * at(y0, x1)) +
                  fy * ((1 - fx) * at(y1, x0) + fx * at(y1, x1));
        }
        dst(dst_frame, y, x, ch) = std::clamp(value, 0.0, 1.0);
      }
    }
  }
}

HandVolumePair build_hand_volumes(const SignSample& sample, const FrameSource& source,
                                  const HandPatchConfig& config) {
  require(config.patch >= 1 && config.out_hw >= 1 && config.frames >= 1,
          "hand patch sizes must be positive");
  const std::vector<std::size_t> picks =
      select_low_motion_frames(sample, config.frames, config.smoothing_window);
  HandVolumePair out{
      HandVolume(config.frames, config.out_hw, config.out_hw, source.channels()),
      HandVolume(config.frames, config.out_hw, config.out_hw, source.channels())};
  for (std::size_t f = 0; f < picks.size(); ++f) {
    const SkeletonFrame& frame = sample.frames[picks[f]];
    if (!frame.joints2d) {
      fail(ErrorCode::kMissingModality,
           "sample " + sample.subject_id + "/" + sample.stem +
               " has no 2D joints; cannot crop hand patches");
    }
    const Point2& left = (*frame.joints2d)[index_of(JointId::WristLeft)];
    const Point2& right = (*frame.joints2d)[index_of(JointId::WristRight)];
    crop_resize(source, picks[f], left[0], left[1], config.patch, config.out_hw, out.left, f);
    crop_resize(source, picks[f], right[0], right[1], config.patch, config.out_hw, out.right, f);
  }
  return out;
}

}  // namespace signrec
