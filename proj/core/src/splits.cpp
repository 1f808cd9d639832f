// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/splits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "signrec/error.hpp"
#include "signrec/rng.hpp"

namespace signrec {
namespace {

void require_subject(const Dataset& d, std::string_view subject) {
  if (std::find(d.subjects.begin(), d.subjects.end(), subject) == d.subjects.end()) {
    fail(ErrorCode::kInvalidArgument, "unknown subject '" + std::string(subject) + "'");
  }
}

Split empty_split(const Dataset& d, std::string_view test_subject) {
  Split split;
  split.train.vocabulary = d.vocabulary;
  split.test.vocabulary = d.vocabulary;
  for (const std::string& s : d.subjects) {
    if (s != test_subject) split.train.subjects.push_back(s);
  }
  split.test.subjects.push_back(std::string(test_subject));
  return split;
}

}  // namespace

Split split_cross_subject(const Dataset& d, std::string_view test_subject) {
  require_subject(d, test_subject);
  Split split = empty_split(d, test_subject);
  for (const SamplePtr& s : d.samples) {
    (s->subject_id == test_subject ? split.test : split.train).samples.push_back(s);
  }
  if (split.test.samples.empty()) {
    split.warnings.push_back("subject '" + std::string(test_subject) + "' has no samples");
  }
  return split;
}

Split split_adaptation(const Dataset& d, std::string_view test_subject, double fraction,
                       std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 0.5)) {
    fail(ErrorCode::kInvalidArgument,
         "adaptation fraction must lie in [0, 0.5], got " + std::to_string(fraction));
  }
  require_subject(d, test_subject);
  Split split = empty_split(d, test_subject);
  // The other subjects keep their own subject ids in train; the test subject
  // also contributes pool samples, so list it there too.
  split.train.subjects.push_back(std::string(test_subject));
  std::sort(split.train.subjects.begin(), split.train.subjects.end());

  std::map<int, std::vector<SamplePtr>> by_class;
  for (const SamplePtr& s : d.samples) {
    if (s->subject_id == test_subject) {
      by_class[s->class_label].push_back(s);
    } else {
      split.train.samples.push_back(s);
    }
  }
  if (by_class.empty()) {
    split.warnings.push_back("subject '" + std::string(test_subject) + "' has no samples");
  }

  Rng rng = make_rng(seed, "adaptation:" + std::string(test_subject));
  std::vector<std::vector<SamplePtr>> pools;
  for (auto& [label, samples] : by_class) {
    std::shuffle(samples.begin(), samples.end(), rng);
    const std::size_t pool_size = samples.size() / 2;
    const std::size_t test_size = samples.size() - pool_size;
    split.test.samples.insert(split.test.samples.end(), samples.begin(),
                              samples.begin() + static_cast<std::ptrdiff_t>(test_size));
    pools.emplace_back(samples.begin() + static_cast<std::ptrdiff_t>(test_size), samples.end());
  }
  std::vector<SamplePtr> pool;
  for (std::size_t round = 0;; ++round) {
    bool any = false;
    for (const auto& p : pools) {
      if (round < p.size()) {
        pool.push_back(p[round]);
        any = true;
      }
    }
    if (!any) break;
  }
  const auto take = static_cast<std::size_t>(
      std::floor(fraction / 0.5 * static_cast<double>(pool.size()) + 1e-9));
  split.train.samples.insert(split.train.samples.end(), pool.begin(),
                             pool.begin() + static_cast<std::ptrdiff_t>(std::min(take, pool.size())));
  return split;
}

void audit_disjoint(const Dataset& train, const Dataset& test) {
  std::set<SampleKey> keys;
  for (const SamplePtr& s : train.samples) keys.insert(s->key());
  for (const SamplePtr& s : test.samples) {
    if (keys.count(s->key())) {
      fail(ErrorCode::kInternal, "split leak: sample " + s->subject_id + "/" +
                                     std::to_string(s->class_label) + "/" + s->stem +
                                     " is in both train and test");
    }
  }
}

}  // namespace signrec
