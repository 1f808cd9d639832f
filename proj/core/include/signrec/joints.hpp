// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_JOINTS_HPP_
#define SIGNREC_JOINTS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace signrec {

// Kinect v2 body joint layout, in sensor enumeration order.
enum class JointId : std::uint8_t {
  SpineBase = 0,
  SpineMid,
  Neck,
  Head,
  ShoulderLeft,
  ElbowLeft,
  WristLeft,
  HandLeft,
  ShoulderRight,
  ElbowRight,
  WristRight,
  HandRight,
  HipLeft,
  KneeLeft,
  AnkleLeft,
  FootLeft,
  HipRight,
  KneeRight,
  AnkleRight,
  FootRight,
  SpineShoulder,
  HandTipLeft,
  ThumbLeft,
  HandTipRight,
  ThumbRight,
};

inline constexpr std::size_t kJointCount = 25;

constexpr std::size_t index_of(JointId id) { return static_cast<std::size_t>(id); }

/// Upper-limb joints used by the skeletal models, in model input order.
/// "Wrist" means the Kinect Wrist joint, not Hand or HandTip.
inline constexpr std::array<JointId, 6> kArmJoints = {
    JointId::WristLeft,    JointId::WristRight,   JointId::ElbowLeft,
    JointId::ElbowRight,   JointId::ShoulderLeft, JointId::ShoulderRight,
};

std::string_view joint_name(JointId id);
std::optional<JointId> joint_from_name(std::string_view name);
std::array<JointId, kJointCount> all_joints();

}  // namespace signrec

#endif  // SIGNREC_JOINTS_HPP_
