// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_SPLITS_HPP_
#define SIGNREC_SPLITS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "signrec/dataset.hpp"

namespace signrec {

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

/// Test = every sample of `test_subject`; train = everything else.
Split split_cross_subject(const Dataset& d, std::string_view test_subject);

/// The test subject's samples are halved per class with a seeded shuffle: a
/// fixed held-out half (test) and a pool. The first
/// floor(fraction / 0.5 * |pool|) pool samples, in a class-interleaved seeded
/// order, join the other subjects' samples in train. Pools are nested across
/// fractions and the test half does not depend on the fraction.
Split split_adaptation(const Dataset& d, std::string_view test_subject, double fraction,
                       std::uint64_t seed);

/// Throws kInternal if any sample identity appears in both sets.
void audit_disjoint(const Dataset& train, const Dataset& test);

}  // namespace signrec

#endif  // SIGNREC_SPLITS_HPP_
