// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <regex>
#include <set>

#include "signrec/dataset.hpp"
#include "signrec/error.hpp"
#include "signrec/hand_volume.hpp"
#include "signrec/joints.hpp"
#include "signrec/preprocess.hpp"
#include "signrec/rng.hpp"
#include "signrec/splits.hpp"
#include "signrec/synth.hpp"
#include "signrec/tensor.hpp"
#include "test_util.hpp"

namespace signrec {
namespace {

using testing::TempDir;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected signrec::Error";
  return ErrorCode::kInternal;
}

std::set<SampleKey> keys(const Dataset& d) {
  std::set<SampleKey> out;
  for (const auto& s : d.samples) out.insert(s->key());
  return out;
}

TEST(Joints, LayoutHas25DistinctIds) {
  std::set<std::string_view> names;
  for (JointId j : all_joints()) {
    names.insert(joint_name(j));
    EXPECT_EQ(joint_from_name(joint_name(j)), j);
  }
  EXPECT_EQ(names.size(), kJointCount);
  EXPECT_FALSE(joint_from_name("Tail").has_value());
}

TEST(Joints, ArmSubsetHasSixJointsIncludingWrists) {
  std::set<JointId> arm(kArmJoints.begin(), kArmJoints.end());
  EXPECT_EQ(arm.size(), 6u);
  EXPECT_TRUE(arm.count(JointId::WristLeft));
  EXPECT_TRUE(arm.count(JointId::WristRight));
  EXPECT_EQ(kArmJoints[0], JointId::WristLeft);
  EXPECT_EQ(kArmJoints[5], JointId::ShoulderRight);
}

TEST(Tensor, RowMajorOffsets) {
  Tensor t({2, 3, 4});
  t(1, 2, 3) = 7.0;
  EXPECT_EQ(t[1 * 12 + 2 * 4 + 3], 7.0);
  EXPECT_EQ(t.size(), 24u);
  EXPECT_EQ(shape_string(t.shape()), "[2x3x4]");
  EXPECT_THROW(Tensor({2, 2}, std::vector<double>(3)), Error);
}

TEST(Rng, NamedStreamsAreIndependentAndStable) {
  EXPECT_EQ(derive_seed(1, "init"), derive_seed(1, "init"));
  EXPECT_NE(derive_seed(1, "init"), derive_seed(1, "dropout"));
  EXPECT_NE(derive_seed(1, "init"), derive_seed(2, "init"));
  EXPECT_NE(derive_seed(1, "x", 1), derive_seed(1, "x", 2));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = hash_unit(k);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

HandVolumePair random_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HandVolumePair p{HandVolume(3, 4, 5, 3), HandVolume(3, 4, 5, 3)};
  for (double& v : p.left.tensor().data()) v = u(rng);
  for (double& v : p.right.tensor().data()) v = u(rng);
  p.left.normalize_storage();
  p.right.normalize_storage();
  return p;
}

TEST(HandVolumeFormat, RoundTripIsBitExact) {
  const HandVolumePair p = random_pair(3);
  const std::vector<char> bytes = encode_hpv(p);
  EXPECT_EQ(bytes.size(), 8 + 5 * 4 + 2 * 3 * 4 * 5 * 3 * 4u);
  EXPECT_EQ(std::string(bytes.data(), 4), "HPV1");
  const HandVolumePair q = decode_hpv(bytes);
  EXPECT_EQ(p, q);
  EXPECT_EQ(encode_hpv(q), bytes);
}

TEST(HandVolumeFormat, RejectsCorruptInput) {
  std::vector<char> bytes = encode_hpv(random_pair(4));
  std::vector<char> bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(code_of([&] { decode_hpv(bad_magic); }), ErrorCode::kFormat);
  std::vector<char> truncated(bytes.begin(), bytes.end() - 3);
  EXPECT_EQ(code_of([&] { decode_hpv(truncated); }), ErrorCode::kFormat);
  std::vector<char> out_of_range = bytes;
  const float two = 2.0f;
  std::memcpy(out_of_range.data() + 28, &two, 4);
  EXPECT_EQ(code_of([&] { decode_hpv(out_of_range); }), ErrorCode::kFormat);
}

TEST(HandVolumeFormat, FileRoundTrip) {
  TempDir dir;
  const HandVolumePair p = random_pair(5);
  write_hpv(dir / "a.hpv", p);
  EXPECT_EQ(read_hpv(dir / "a.hpv"), p);
  EXPECT_EQ(code_of([&] { read_hpv(dir / "missing.hpv"); }), ErrorCode::kIo);
}

TEST(SkeletonJson, RoundTrip) {
  const Dataset d = generate_synthetic(testing::small_synth(2, 1, 1));
  const SignSample& s = *d.samples.front();
  const std::string text = encode_skeleton_json(s);
  SignSample back;
  back.subject_id = s.subject_id;
  back.class_label = s.class_label;
  back.stem = s.stem;
  decode_skeleton_json(text, back);
  EXPECT_EQ(back.frames, s.frames);
  EXPECT_EQ(back.fps, s.fps);
  EXPECT_EQ(encode_skeleton_json(back), text);
}

TEST(LoadDataset, CountsFixtureOnDisk) {
  TempDir dir;
  const Dataset d = generate_synthetic(testing::small_synth(3, 2, 4));
  save_dataset(d, dir.path());
  const LoadResult r = load_dataset(dir.path());
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.dataset.samples.size(), 24u);
  EXPECT_EQ(r.dataset.num_classes(), 3u);
  EXPECT_EQ(r.dataset.subjects.size(), 2u);
  EXPECT_TRUE(same_contents(d, r.dataset));
}

TEST(LoadDataset, EmptyStructureIsFatal) {
  TempDir dir;
  std::filesystem::create_directories(dir / "subject_00/sign_000");
  EXPECT_EQ(code_of([&] { load_dataset(dir.path()); }), ErrorCode::kEmptyDataset);
  EXPECT_EQ(code_of([&] { load_dataset(dir / "nope"); }), ErrorCode::kIo);
}

TEST(LoadDataset, NonFiniteSampleIsSkippedWithOneWarning) {
  TempDir dir;
  const Dataset d = generate_synthetic(testing::small_synth(2, 1, 2));
  save_dataset(d, dir.path());
  const auto victim = dir / "subject_00/sign_001/0000.skel.json";
  const std::string text = std::regex_replace(
      testing::slurp(victim), std::regex(R"re("joints3d":\[\[[-0-9.eE+]+)re"),
      R"("joints3d":[[1e999)", std::regex_constants::format_first_only);
  write_text_file(victim, text);
  const LoadResult r = load_dataset(dir.path());
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.dataset.samples.size(), 3u);
}

TEST(LoadDataset, MalformedJsonIsSkipped) {
  TempDir dir;
  save_dataset(generate_synthetic(testing::small_synth(2, 1, 2)), dir.path());
  write_text_file(dir / "subject_00/sign_000/0001.skel.json", "{not json");
  const LoadResult r = load_dataset(dir.path());
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.dataset.samples.size(), 3u);
}

TEST(SaveDataset, SaveLoadSaveIsByteIdentical) {
  TempDir a, b;
  const Dataset d = generate_synthetic(testing::small_synth(3, 2, 2, true));
  save_dataset(d, a.path());
  const Dataset loaded = load_dataset(a.path()).dataset;
  save_dataset(loaded, b.path());
  EXPECT_EQ(testing::tree_contents(a.path()), testing::tree_contents(b.path()));
  EXPECT_TRUE(same_contents(d, loaded));
  EXPECT_TRUE(loaded.has_hand_volumes());
}

TEST(Synthetic, SameSeedIsBitIdentical) {
  SynthConfig c = testing::small_synth(3, 2, 2, true);
  c.rng_seed = 7;
  const Dataset a = generate_synthetic(c);
  const Dataset b = generate_synthetic(c);
  EXPECT_TRUE(same_contents(a, b));
  c.rng_seed = 8;
  EXPECT_FALSE(same_contents(a, generate_synthetic(c)));
}

TEST(Synthetic, SampleCountArithmetic) {
  SynthConfig c;
  c.num_subjects = 12;
  c.num_classes = 51;
  c.samples_per_class_per_subject = 4;
  c.with_hands = false;
  c.frame_length_range = {20, 24};
  const Dataset d = generate_synthetic(c);
  EXPECT_EQ(d.samples.size(), 2448u);
  EXPECT_EQ(d.vocabulary.size(), 51u);
  EXPECT_NO_THROW(d.validate());
}

TEST(Synthetic, InvalidConfigIsFatal) {
  SynthConfig c = testing::small_synth();
  c.num_classes = 0;
  EXPECT_THROW(generate_synthetic(c), Error);
  c = testing::small_synth();
  c.num_subjects = 0;
  EXPECT_THROW(generate_synthetic(c), Error);
  c = testing::small_synth();
  c.twin_class_pairs = {{0, 7}};
  EXPECT_THROW(generate_synthetic(c), Error);
}

double mean_joint_distance(const SignSample& a, const SignSample& b) {
  const SkelTensor x = resample_uniform(select_joints(a), 20);
  const SkelTensor y = resample_uniform(select_joints(b), 20);
  double sum = 0.0;
  for (std::size_t t = 0; t < 20; ++t) {
    for (std::size_t j = 0; j < 6; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < 3; ++k) sq += std::pow(x(t, j, k) - y(t, j, k), 2);
      sum += std::sqrt(sq);
    }
  }
  return sum / 120.0;
}

TEST(Synthetic, TwinClassesShareMotion) {
  SynthConfig c = testing::small_synth(3, 1, 2);
  c.twin_class_pairs = {{0, 1}};
  const Dataset d = generate_synthetic(c);
  auto find = [&](int label, const std::string& stem) {
    for (const auto& s : d.samples) {
      if (s->class_label == label && s->stem == stem) return s;
    }
    throw std::runtime_error("missing sample");
  };
  const double twin = mean_joint_distance(*find(0, "0000"), *find(1, "0000"));
  const double same_class = mean_joint_distance(*find(0, "0000"), *find(0, "0001"));
  EXPECT_LT(twin, same_class);
}

TEST(Synthetic, SignerStyleVariesRenditionsAndKeepsTwins) {
  SynthConfig c = testing::small_synth(4, 2, 1);
  c.subject_variation.scale_range = {1.0, 1.0};
  c.subject_variation.speed_range = {1.0, 1.0};
  c.subject_variation.offset_range = 0.0;
  c.twin_class_pairs = {{0, 1}};
  c.relation_class_pairs = {{2, 3}};
  auto sample = [](const Dataset& d, const std::string& subject, int label) {
    for (const auto& s : d.samples) {
      if (s->subject_id == subject && s->class_label == label) return s;
    }
    throw std::runtime_error("missing sample");
  };
  const Dataset plain = generate_synthetic(c);
  c.subject_variation.style = 0.4;
  const Dataset styled = generate_synthetic(c);
  EXPECT_EQ(styled.samples.size(), plain.samples.size());
  EXPECT_FALSE(same_contents(plain, styled));

  const double across_plain =
      mean_joint_distance(*sample(plain, "subject_00", 0), *sample(plain, "subject_01", 0));
  const double across_styled =
      mean_joint_distance(*sample(styled, "subject_00", 0), *sample(styled, "subject_01", 0));
  EXPECT_GT(across_styled, 3.0 * across_plain);

  // Twin partners keep an identical rendition within each subject.
  for (const char* subject : {"subject_00", "subject_01"}) {
    EXPECT_LT(mean_joint_distance(*sample(styled, subject, 0), *sample(styled, subject, 1)),
              across_plain + 0.01);
  }

  c.subject_variation.style = -0.1;
  EXPECT_THROW(generate_synthetic(c), Error);
}

TEST(Splits, CrossSubjectTwoSubjects) {
  const Dataset d = generate_synthetic(testing::small_synth(3, 2, 2));
  const Split s = split_cross_subject(d, "subject_00");
  for (const auto& x : s.test.samples) EXPECT_EQ(x->subject_id, "subject_00");
  for (const auto& x : s.train.samples) EXPECT_EQ(x->subject_id, "subject_01");
  EXPECT_EQ(s.train.samples.size() + s.test.samples.size(), d.samples.size());
  EXPECT_THROW(split_cross_subject(d, "nobody"), Error);
}

TEST(Splits, TwelveSubjectsDisjointAndExhaustive) {
  const Dataset d = generate_synthetic(testing::small_synth(2, 12, 1));
  const auto all = keys(d);
  std::set<SampleKey> union_of_tests;
  for (const std::string& subj : d.subjects) {
    const Split s = split_cross_subject(d, subj);
    const auto tr = keys(s.train), te = keys(s.test);
    std::set<SampleKey> both;
    std::set_union(tr.begin(), tr.end(), te.begin(), te.end(), std::inserter(both, both.end()));
    EXPECT_EQ(both, all);
    for (const auto& k : te) {
      EXPECT_FALSE(tr.count(k));
      EXPECT_TRUE(union_of_tests.insert(k).second);
    }
    EXPECT_NO_THROW(audit_disjoint(s.train, s.test));
  }
  EXPECT_EQ(union_of_tests, all);
}

TEST(Splits, SubjectWithoutSamplesWarns) {
  Dataset d = generate_synthetic(testing::small_synth(2, 2, 1));
  d.subjects.push_back("subject_99");
  const Split s = split_cross_subject(d, "subject_99");
  EXPECT_TRUE(s.test.samples.empty());
  EXPECT_EQ(s.warnings.size(), 1u);
}

TEST(Splits, AdaptationBoundariesAndNesting) {
  const Dataset d = generate_synthetic(testing::small_synth(3, 3, 4));
  const std::string subj = "subject_01";
  const Split cs = split_cross_subject(d, subj);
  const Split f0 = split_adaptation(d, subj, 0.0, 11);
  const Split f1 = split_adaptation(d, subj, 0.1, 11);
  const Split f3 = split_adaptation(d, subj, 0.3, 11);
  const Split f5 = split_adaptation(d, subj, 0.5, 11);
  EXPECT_EQ(keys(f0.train), keys(cs.train));
  EXPECT_EQ(f0.test.samples.size(), 6u);  // half of 4 per class, 3 classes
  EXPECT_EQ(keys(f0.test), keys(f1.test));
  EXPECT_EQ(keys(f0.test), keys(f3.test));
  EXPECT_EQ(keys(f0.test), keys(f5.test));
  const auto t1 = keys(f1.train), t3 = keys(f3.train), t5 = keys(f5.train);
  EXPECT_TRUE(std::includes(t3.begin(), t3.end(), t1.begin(), t1.end()));
  EXPECT_TRUE(std::includes(t5.begin(), t5.end(), t3.begin(), t3.end()));
  // Pool of 6: floor(0.2*6)=1, floor(0.6*6)=3, all 6.
  EXPECT_EQ(t1.size() - cs.train.samples.size(), 1u);
  EXPECT_EQ(t3.size() - cs.train.samples.size(), 3u);
  EXPECT_EQ(t5.size() - cs.train.samples.size(), 6u);
  for (const Split* s : {&f0, &f1, &f3, &f5}) EXPECT_NO_THROW(audit_disjoint(s->train, s->test));
  EXPECT_THROW(split_adaptation(d, subj, 0.6, 11), Error);
  EXPECT_THROW(split_adaptation(d, subj, -0.1, 11), Error);
}

TEST(Splits, AuditDetectsOverlap) {
  const Dataset d = generate_synthetic(testing::small_synth(2, 2, 1));
  Split s = split_cross_subject(d, "subject_00");
  s.train.samples.push_back(s.test.samples.front());
  EXPECT_EQ(code_of([&] { audit_disjoint(s.train, s.test); }), ErrorCode::kInternal);
}

}  // namespace
}  // namespace signrec
