// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/joints.hpp"

namespace signrec {
namespace {

constexpr std::array<std::string_view, kJointCount> kNames = {
    "SpineBase",    "SpineMid",      "Neck",       "Head",
    "ShoulderLeft", "ElbowLeft",     "WristLeft",  "HandLeft",
    "ShoulderRight", "ElbowRight",   "WristRight", "HandRight",
    "HipLeft",      "KneeLeft",      "AnkleLeft",  "FootLeft",
    "HipRight",     "KneeRight",     "AnkleRight", "FootRight",
    "SpineShoulder", "HandTipLeft",  "ThumbLeft",  "HandTipRight",
    "ThumbRight",
};

}  // namespace

std::string_view joint_name(JointId id) { return kNames.at(index_of(id)); }

std::optional<JointId> joint_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<JointId>(i);
  }
  return std::nullopt;
}

std::array<JointId, kJointCount> all_joints() {
  std::array<JointId, kJointCount> out{};
  for (std::size_t i = 0; i < kJointCount; ++i) out[i] = static_cast<JointId>(i);
  return out;
}

}  // namespace signrec
