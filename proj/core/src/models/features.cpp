// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/models/features.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "signrec/error.hpp"

namespace signrec::models {

std::string_view series_stat_name(SeriesStat stat) {
  switch (stat) {
    case SeriesStat::kMean: return "mean";
    case SeriesStat::kArea: return "area";
    case SeriesStat::kSkew: return "skew";
    case SeriesStat::kKurtosis: return "kurtosis";
    case SeriesStat::kMotionEnergy: return "motion_energy";
    case SeriesStat::kRange: return "range";
    case SeriesStat::kVariance: return "variance";
  }
  return "unknown";
}

std::array<double, kStatsPerSeries> series_statistics(std::span<const double> s) {
  require(s.size() >= 2, "feature extraction needs at least 2 frames");
  const double n = static_cast<double>(s.size());
  double shifted = 0.0, area = 0.0, energy = 0.0;
  double lo = s[0], hi = s[0];
  for (std::size_t t = 0; t < s.size(); ++t) {
    shifted += s[t] - s[0];
    area += std::abs(s[t]);
    lo = std::min(lo, s[t]);
    hi = std::max(hi, s[t]);
    if (t > 0) energy += (s[t] - s[t - 1]) * (s[t] - s[t - 1]);
  }
  const double mean = s[0] + shifted / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : s) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double sigma = std::sqrt(m2);
  double skew = 0.0, kurt = 0.0;
  if (sigma >= 1e-12) {
    skew = m3 / (sigma * sigma * sigma);
    kurt = m4 / (m2 * m2) - 3.0;
  }
  return {mean, area, skew, kurt, energy, hi - lo, m2};
}

nn::Vector extract_features(const SkelTensor& x) {
  const std::size_t T = x.frames(), J = x.joints();
  require(T >= 2, "feature extraction needs at least 2 frames");
  nn::Vector out(static_cast<Eigen::Index>(kStatsPerSeries * J * 3));
  std::vector<double> series(T);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t t = 0; t < T; ++t) series[t] = x(t, j, a);
      const auto stats = series_statistics(series);
      for (std::size_t k = 0; k < kStatsPerSeries; ++k) {
        out[static_cast<Eigen::Index>((j * 3 + a) * kStatsPerSeries + k)] = stats[k];
      }
    }
  }
  return out;
}

nn::Vector extract_features126(const SkelTensor& x) {
  require(x.joints() == 6, "extract_features126 expects 6 joints, got " +
                               std::to_string(x.joints()));
  return extract_features(x);
}

}  // namespace signrec::models
