// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>

#include "signrec/error.hpp"
#include "signrec/rng.hpp"

namespace signrec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFps = 30.0;

struct Sinusoid {
  double amplitude, frequency, phase;
};

// Motion of the six arm joints (kArmJoints order), body-relative.
struct MotionPrototype {
  std::array<Point3, 6> anchor{};
  std::array<std::array<std::vector<Sinusoid>, 3>, 6> waves;

  Point3 eval(std::size_t joint, double tau) const {
    Point3 p = anchor[joint];
    for (std::size_t a = 0; a < 3; ++a) {
      for (const Sinusoid& s : waves[joint][a]) {
        p[a] += s.amplitude * std::sin(kTwoPi * s.frequency * tau + s.phase);
      }
    }
    return p;
  }
};

// Body-relative rest positions (meters) of all 25 joints; arm joints are
// replaced by the motion prototype.
std::array<Point3, kJointCount> rest_pose() {
  std::array<Point3, kJointCount> p{};
  auto set = [&](JointId id, double x, double y, double z) { p[index_of(id)] = {x, y, z}; };
  set(JointId::SpineBase, 0.0, -0.35, 0.02);
  set(JointId::SpineMid, 0.0, 0.0, 0.0);
  set(JointId::Neck, 0.0, 0.36, 0.0);
  set(JointId::Head, 0.0, 0.52, 0.0);
  set(JointId::SpineShoulder, 0.0, 0.28, 0.0);
  set(JointId::ShoulderLeft, -0.18, 0.26, 0.0);
  set(JointId::ShoulderRight, 0.18, 0.26, 0.0);
  set(JointId::ElbowLeft, -0.22, 0.0, -0.08);
  set(JointId::ElbowRight, 0.22, 0.0, -0.08);
  set(JointId::WristLeft, -0.15, 0.05, -0.30);
  set(JointId::WristRight, 0.15, 0.05, -0.30);
  set(JointId::HipLeft, -0.10, -0.38, 0.0);
  set(JointId::KneeLeft, -0.10, -0.80, 0.0);
  set(JointId::AnkleLeft, -0.10, -1.20, 0.02);
  set(JointId::FootLeft, -0.10, -1.25, -0.08);
  set(JointId::HipRight, 0.10, -0.38, 0.0);
  set(JointId::KneeRight, 0.10, -0.80, 0.0);
  set(JointId::AnkleRight, 0.10, -1.20, 0.02);
  set(JointId::FootRight, 0.10, -1.25, -0.08);
  return p;
}

MotionPrototype draw_prototype(Rng& rng) {
  static const std::array<double, 6> kJointGain = {1.0, 1.0, 0.5, 0.5, 0.12, 0.12};
  const auto rest = rest_pose();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MotionPrototype proto;
  for (std::size_t j = 0; j < 6; ++j) {
    const Point3& r = rest[index_of(kArmJoints[j])];
    for (std::size_t a = 0; a < 3; ++a) {
      proto.anchor[j][a] = r[a] + kJointGain[j] * (unit(rng) - 0.5) * 0.2;
      const int waves = 2 + static_cast<int>(unit(rng) * 3.0);  // 2..4
      for (int k = 0; k < waves; ++k) {
        Sinusoid s;
        s.amplitude = kJointGain[j] * (0.02 + 0.07 * unit(rng));
        s.frequency = 0.5 + 2.0 * unit(rng);
        s.phase = kTwoPi * unit(rng);
        proto.waves[j][a].push_back(s);
      }
    }
  }
  return proto;
}

HandTexture draw_texture(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  HandTexture t;
  for (std::size_t c = 0; c < 3; ++c) {
    t.base[c] = 0.2 + 0.6 * unit(rng);
    t.amplitude[c] = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.08 + 0.14 * unit(rng));
  }
  t.angle = std::numbers::pi * unit(rng);
  t.wavelength = 6.0 + 14.0 * unit(rng);
  t.phase = kTwoPi * unit(rng);
  return t;
}

double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::string zero_padded(const char* prefix, std::size_t index, int width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, index);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  require(num_classes > 0, "synthetic config needs at least one class");
  require(num_subjects > 0, "synthetic config needs at least one subject");
  require(samples_per_class_per_subject > 0, "samples_per_class_per_subject must be positive");
  require(frame_length_range.first >= 2 &&
              frame_length_range.first <= frame_length_range.second,
          "frame_length_range must satisfy 2 <= min <= max");
  require(noise_sigma >= 0.0 && texture_noise >= 0.0 && position_jitter >= 0.0,
          "noise levels must be non-negative");
  const auto& v = subject_variation;
  require(v.scale_range.first > 0.0 && v.scale_range.first <= v.scale_range.second,
          "scale_range must be positive and ordered");
  require(v.speed_range.first > 0.0 && v.speed_range.first <= v.speed_range.second,
          "speed_range must be positive and ordered");
  require(v.offset_range >= 0.0 && v.brightness_range >= 0.0 && v.style >= 0.0,
          "offset/brightness/style ranges must be non-negative");
  require(!with_hands || (hand_frames > 0 && patch > 0 && patch_out > 0),
          "hand volume dimensions must be positive");
  std::set<int> used;
  for (const auto* pairs : {&twin_class_pairs, &relation_class_pairs}) {
    for (const auto& [a, b] : *pairs) {
      require(a >= 0 && b >= 0 && static_cast<std::size_t>(a) < num_classes &&
                  static_cast<std::size_t>(b) < num_classes && a != b,
              "class pair references an invalid class");
      require(used.insert(a).second && used.insert(b).second,
              "a class may belong to at most one twin/relation pair");
    }
  }
}

HandTexture HandTexture::uniform(double gray) {
  HandTexture t;
  t.base = {gray, gray, gray};
  t.amplitude = {0.0, 0.0, 0.0};
  return t;
}

Point2 CameraIntrinsics::project(const Point3& p) const {
  const double z = std::max(p[2], 1e-3);
  return {cx + fx * p[0] / z, cy - fy * p[1] / z};
}

SyntheticFrameSource::SyntheticFrameSource(const SignSample& sample, HandTexture left,
                                           HandTexture right, CameraIntrinsics camera,
                                           double brightness, double noise,
                                           std::uint64_t noise_seed)
    : textures_{left, right},
      camera_(camera),
      brightness_(brightness),
      noise_(noise),
      noise_seed_(noise_seed) {
  wrists_.reserve(sample.frames.size());
  for (const SkeletonFrame& f : sample.frames) {
    require(f.joints2d.has_value(), "synthetic rendering needs 2D joints");
    wrists_.push_back({(*f.joints2d)[index_of(JointId::WristLeft)],
                       (*f.joints2d)[index_of(JointId::WristRight)]});
  }
}

double SyntheticFrameSource::pixel(std::size_t frame, std::size_t row, std::size_t col,
                                   std::size_t channel) const {
  const auto& w = wrists_.at(frame);
  const double x = static_cast<double>(col);
  const double y = static_cast<double>(row);
  const double dl = (x - w[0][0]) * (x - w[0][0]) + (y - w[0][1]) * (y - w[0][1]);
  const double dr = (x - w[1][0]) * (x - w[1][0]) + (y - w[1][1]) * (y - w[1][1]);
  const std::size_t hand = dl <= dr ? 0 : 1;
  const HandTexture& t = textures_[hand];
  const double dx = x - w[hand][0];
  const double dy = y - w[hand][1];
  const double along = dx * std::cos(t.angle) + dy * std::sin(t.angle);
  double value = t.base[channel] + brightness_ +
                 t.amplitude[channel] * std::sin(kTwoPi * along / t.wavelength + t.phase);
  if (noise_ > 0.0) {
    const std::uint64_t key =
        noise_seed_ ^ mix64((frame << 40) ^ (row << 24) ^ (col << 4) ^ channel);
    value += noise_ * (2.0 * hash_unit(key) - 1.0);
  }
  return std::clamp(value, 0.0, 1.0);
}

std::string synth_subject_name(std::size_t index) { return zero_padded("subject_", index, 2); }
std::string synth_class_name(std::size_t index) { return zero_padded("sign_", index, 3); }

Dataset generate_synthetic(const SynthConfig& config) {
  config.validate();
  const std::uint64_t seed = config.rng_seed;
  const std::size_t C = config.num_classes;

  std::vector<MotionPrototype> protos;
  std::vector<std::array<HandTexture, 2>> textures;
  {
    Rng proto_rng = make_rng(seed, "prototypes");
    Rng tex_rng = make_rng(seed, "textures");
    for (std::size_t c = 0; c < C; ++c) {
      protos.push_back(draw_prototype(proto_rng));
      textures.push_back({draw_texture(tex_rng), draw_texture(tex_rng)});
    }
  }
  // Paired classes share the rendition of their source class.
  std::vector<std::size_t> motion_source(C);
  for (std::size_t c = 0; c < C; ++c) motion_source[c] = c;
  for (const auto* pairs : {&config.twin_class_pairs, &config.relation_class_pairs}) {
    for (const auto& [a, b] : *pairs) motion_source[static_cast<std::size_t>(b)] = static_cast<std::size_t>(a);
  }
  for (const auto& [a, b] : config.twin_class_pairs) protos[b] = protos[a];
  {
    Rng rel_rng = make_rng(seed, "relations");
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const auto& [a, b] : config.relation_class_pairs) {
      Point3 dir{gauss(rel_rng), gauss(rel_rng), gauss(rel_rng)};
      const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
      protos[b] = protos[a];
      for (std::size_t j : {std::size_t{1}, std::size_t{3}}) {  // WristRight, ElbowRight
        for (std::size_t k = 0; k < 3; ++k) {
          protos[b].anchor[j][k] += config.relation_offset * dir[k] / norm;
        }
      }
    }
  }

  struct Subject {
    double scale, speed, brightness;
    Point3 offset;
  };
  std::vector<Subject> subjects;
  {
    Rng subj_rng = make_rng(seed, "subjects");
    const auto& v = config.subject_variation;
    for (std::size_t s = 0; s < config.num_subjects; ++s) {
      Subject sub;
      sub.scale = uniform_in(subj_rng, v.scale_range.first, v.scale_range.second);
      sub.speed = uniform_in(subj_rng, v.speed_range.first, v.speed_range.second);
      sub.brightness = uniform_in(subj_rng, -v.brightness_range, v.brightness_range);
      for (double& o : sub.offset) o = uniform_in(subj_rng, -v.offset_range, v.offset_range);
      subjects.push_back(sub);
    }
  }

  const auto rest = rest_pose();
  const CameraIntrinsics camera;
  const Point3 body_origin{0.0, 0.0, 2.2};

  Dataset d;
  for (std::size_t c = 0; c < C; ++c) d.vocabulary.push_back(synth_class_name(c));
  for (std::size_t s = 0; s < config.num_subjects; ++s) d.subjects.push_back(synth_subject_name(s));

  for (std::size_t s = 0; s < config.num_subjects; ++s) {
    const Subject& sub = subjects[s];
    for (std::size_t c = 0; c < C; ++c) {
      MotionPrototype proto = protos[c];
      if (config.subject_variation.style > 0.0) {
        const double style = config.subject_variation.style;
        Rng style_rng(derive_seed(seed, "style", s, motion_source[c]));
        for (auto& axes : proto.waves) {
          for (auto& waves : axes) {
            for (Sinusoid& w : waves) {
              w.amplitude *= 1.0 + uniform_in(style_rng, -style, style);
              w.phase += std::numbers::pi * uniform_in(style_rng, -style, style);
            }
          }
        }
      }
      for (std::size_t k = 0; k < config.samples_per_class_per_subject; ++k) {
        // Length and placement depend on (subject, index) only, so matched
        // samples of twin classes differ by sensor noise alone.
        Rng take_rng(derive_seed(seed, "take", s, k));
        const auto nominal = static_cast<double>(std::uniform_int_distribution<std::size_t>(
            config.frame_length_range.first, config.frame_length_range.second)(take_rng));
        Point3 jitter{};
        for (double& o : jitter) o = uniform_in(take_rng, -config.position_jitter, config.position_jitter);
        const auto T = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(nominal / sub.speed)));

        Rng noise_rng(derive_seed(seed, "noise", s, c, k));
        std::normal_distribution<double> noise(0.0, config.noise_sigma);
        Point3 center;
        for (std::size_t a = 0; a < 3; ++a) center[a] = body_origin[a] + sub.offset[a] + jitter[a];

        auto sample = std::make_shared<SignSample>();
        sample->subject_id = d.subjects[s];
        sample->class_label = static_cast<int>(c);
        sample->stem = zero_padded("", k, 4);
        sample->fps = kFps;
        sample->frames.resize(T);
        for (std::size_t t = 0; t < T; ++t) {
          const double tau = static_cast<double>(t) / static_cast<double>(T - 1);
          std::array<Point3, kJointCount> rel = rest;
          for (std::size_t j = 0; j < 6; ++j) rel[index_of(kArmJoints[j])] = proto.eval(j, tau);
          auto follow = [&](JointId child, JointId wrist, Point3 delta) {
            const Point3& w = rel[index_of(wrist)];
            rel[index_of(child)] = {w[0] + delta[0], w[1] + delta[1], w[2] + delta[2]};
          };
          follow(JointId::HandLeft, JointId::WristLeft, {0.0, 0.03, -0.04});
          follow(JointId::HandTipLeft, JointId::WristLeft, {0.0, 0.06, -0.08});
          follow(JointId::ThumbLeft, JointId::WristLeft, {0.03, 0.02, -0.04});
          follow(JointId::HandRight, JointId::WristRight, {0.0, 0.03, -0.04});
          follow(JointId::HandTipRight, JointId::WristRight, {0.0, 0.06, -0.08});
          follow(JointId::ThumbRight, JointId::WristRight, {-0.03, 0.02, -0.04});

          SkeletonFrame& frame = sample->frames[t];
          frame.timestamp = static_cast<double>(t) / kFps;
          std::array<Point2, kJointCount> uv{};
          for (std::size_t j = 0; j < kJointCount; ++j) {
            for (std::size_t a = 0; a < 3; ++a) {
              frame.joints3d[j][a] = center[a] + sub.scale * rel[j][a] + noise(noise_rng);
            }
            uv[j] = camera.project(frame.joints3d[j]);
          }
          frame.joints2d = uv;
        }

        if (config.with_hands) {
          const SyntheticFrameSource source(*sample, textures[c][0], textures[c][1], camera,
                                            sub.brightness, config.texture_noise,
                                            derive_seed(seed, "texture_noise", s, c, k));
          HandVolumePair volumes = build_hand_volumes(
              *sample, source, {config.patch, config.patch_out, config.hand_frames, 5});
          volumes.left.normalize_storage();
          volumes.right.normalize_storage();
          sample->hand_volumes = std::move(volumes);
        }
        d.samples.push_back(std::move(sample));
      }
    }
  }
  return d;
}

}  // namespace signrec
