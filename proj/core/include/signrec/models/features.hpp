// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_MODELS_FEATURES_HPP_
#define SIGNREC_MODELS_FEATURES_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "signrec/nn/parameters.hpp"
#include "signrec/preprocess.hpp"

namespace signrec::models {

enum class SeriesStat { kMean, kArea, kSkew, kKurtosis, kMotionEnergy, kRange, kVariance };

inline constexpr std::size_t kStatsPerSeries = 7;
inline constexpr std::size_t kFeatureCount = kStatsPerSeries * 6 * 3;  // 126

std::string_view series_stat_name(SeriesStat stat);

/// The seven statistics of one series, in SeriesStat order. Needs >= 2 values.
std::array<double, kStatsPerSeries> series_statistics(std::span<const double> s);

/// Index of (joint, axis, stat) in the flat feature vector.
constexpr std::size_t feature_index(std::size_t joint, std::size_t axis, SeriesStat stat) {
  return (joint * 3 + axis) * kStatsPerSeries + static_cast<std::size_t>(stat);
}

/// Statistics for every joint-axis series of x (7 * J * 3 values).
nn::Vector extract_features(const SkelTensor& x);
/// extract_features restricted to the six arm joints.
nn::Vector extract_features126(const SkelTensor& x);

}  // namespace signrec::models

#endif  // SIGNREC_MODELS_FEATURES_HPP_
