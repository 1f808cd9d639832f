// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "signrec/dataset.hpp"
#include "signrec/eval/reports.hpp"
#include "signrec/models/trainer.hpp"
#include "signrec/nn/checkpoint.hpp"
#include "signrec/rng.hpp"
#include "test_util.hpp"

namespace signrec::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> synth_args(const fs::path& out, bool hands = false) {
  std::vector<std::string> a = {"synth", "--out", out.string(), "--classes", "3", "--subjects",
                                "3", "--samples", "2", "--min-frames", "24", "--max-frames", "36",
                                "--seed", "4"};
  if (!hands) a.push_back("--no-hands");
  return a;
}

std::vector<std::string> train_args(const fs::path& data, const fs::path& out) {
  return {"train", "--data", data.string(), "--out", out.string(), "--model", "ai-lstm",
          "--epochs", "2", "--state-size", "4", "--seed", "3"};
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(testing::slurp(p)); }

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"train", "--epochs", "abc"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"train", "--data", "/nonexistent", "--out", "/tmp/x", "--model", "nope"}).code,
            kExitUsage);
  const Outcome missing = run_cli({"train", "--data", "/nonexistent/data", "--out", "/tmp/x"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("/nonexistent/data"), std::string::npos) << missing.err;
}

TEST(Cli, HelpListsFlagsWithDefaults) {
  for (const char* sub : {"synth", "train", "eval", "segment", "features", "embed"}) {
    const Outcome o = run_cli({sub, "--help"});
    EXPECT_EQ(o.code, kExitOk) << sub;
    const std::string text = o.out + o.err;
    for (const char* flag : {"--data", "--out", "--seed", "--config", "--jobs", "--model",
                             "--epochs", "--lr", "--batch-size", "--state-size", "--frames",
                             "--hand-frames", "--patch", "--patch-out"}) {
      EXPECT_NE(text.find(flag), std::string::npos) << sub << " " << flag;
    }
    EXPECT_NE(text.find("250"), std::string::npos) << sub;
    EXPECT_NE(text.find("100"), std::string::npos) << sub;
  }
}

TEST(Cli, MissingConfigNamesPath) {
  const Outcome o = run_cli({"synth", "--config", "/nonexistent/run.cfg", "--out", "/tmp/x"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("/nonexistent/run.cfg"), std::string::npos) << o.err;
}

TEST(Cli, ConfigFileWithFlagOverride) {
  testing::TempDir dir;
  write_text_file(dir / "run.cfg",
                  "# toy corpus\nclasses = 2\nsubjects = 2\nsamples = 1\nno_hands = true\n"
                  "min_frames = 24\nmax_frames = 30\nout = " + (dir / "from_cfg").string() + "\n");
  const Outcome a = run_cli({"synth", "--config", (dir / "run.cfg").string()});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(load_dataset(dir / "from_cfg").dataset.samples.size(), 4u);
  const Outcome b = run_cli({"synth", "--config", (dir / "run.cfg").string(), "--classes", "3",
                             "--out", (dir / "override").string()});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(load_dataset(dir / "override").dataset.samples.size(), 6u);

  write_text_file(dir / "bad.cfg", "this line has no equals sign\n");
  EXPECT_EQ(run_cli({"synth", "--config", (dir / "bad.cfg").string()}).code, kExitUsage);
}

TEST(Cli, SynthIsDeterministic) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli(synth_args(dir / "a", true)).code, kExitOk);
  ASSERT_EQ(run_cli(synth_args(dir / "b", true)).code, kExitOk);
  const auto a = testing::tree_contents(dir / "a");
  EXPECT_EQ(a, testing::tree_contents(dir / "b"));
  std::size_t skel = 0, hpv = 0;
  for (const auto& [name, _] : a) {
    skel += name.ends_with(".skel.json");
    hpv += name.ends_with(".hpv");
  }
  EXPECT_EQ(skel, 18u);
  EXPECT_EQ(hpv, 18u);
  EXPECT_EQ(run_cli({"synth", "--out", (dir / "c").string(), "--classes", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"synth", "--out", (dir / "c").string(), "--twin-pairs", "0-1"}).code,
            kExitUsage);
}

TEST(Cli, TrainBatchAccounting) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli({"synth", "--out", (dir / "d").string(), "--classes", "13", "--subjects", "2",
                     "--samples", "5", "--min-frames", "24", "--max-frames", "30", "--no-hands"})
                .code,
            kExitOk);
  const Outcome o = run_cli({"train", "--data", (dir / "d").string(), "--out",
                             (dir / "m").string(), "--epochs", "1", "--state-size", "3",
                             "--batch-size", "64"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto h = read_json(dir / "m" / "history.json");
  EXPECT_EQ(h["samples"], 130);
  ASSERT_EQ(h["history"].size(), 1u);
  EXPECT_EQ(h["history"][0]["batches"], 3);
  EXPECT_EQ(h["checkpoints"][0], "ai-lstm.ckpt");
}

TEST(Cli, ZeroLearningRateKeepsInitialParameters) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli(synth_args(dir / "d")).code, kExitOk);
  auto args = train_args(dir / "d", dir / "m");
  args.insert(args.end(), {"--lr", "0"});
  ASSERT_EQ(run_cli(args).code, kExitOk);
  const nn::Checkpoint c = nn::load_checkpoint(dir / "m" / "ai-lstm.ckpt");
  EXPECT_EQ(c.hyperparam("learning_rate", -1), 0.0);

  models::ModelSpec spec;
  spec.state_size = 4;
  Rng init = make_rng(3, "init:ai-lstm");
  auto fresh = models::build_model(spec, models::ModelKind::kAiLstm, 3, init);
  EXPECT_EQ(nn::export_params(fresh->parameters()), c.tensors);
}

TEST(Cli, TrainEvalRoundTripAndDeterminism) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli(synth_args(dir / "d")).code, kExitOk);
  for (const char* run : {"r1", "r2"}) {
    ASSERT_EQ(run_cli(train_args(dir / "d", dir / run)).code, kExitOk);
    const Outcome e = run_cli({"eval", "--data", (dir / "d").string(), "--checkpoint",
                               (dir / run / "ai-lstm.ckpt").string(), "--out",
                               (dir / run / "eval").string()});
    ASSERT_EQ(e.code, kExitOk) << e.err;
  }
  EXPECT_EQ(testing::tree_contents(dir / "r1"), testing::tree_contents(dir / "r2"));
  const auto metrics = read_json(dir / "r1" / "eval" / "metrics.json");
  EXPECT_EQ(metrics["experiment"], "single-split");
  EXPECT_EQ(metrics["folds"][0]["n"], 18);
  EXPECT_TRUE(fs::exists(dir / "r1" / "eval" / "confusion_all.csv"));

  // Fusing a checkpoint with itself reproduces the single-model report.
  const auto ckpt = (dir / "r1" / "ai-lstm.ckpt").string();
  ASSERT_EQ(run_cli({"eval", "--data", (dir / "d").string(), "--checkpoint", ckpt, "--checkpoint",
                     ckpt, "--out", (dir / "fused").string()})
                .code,
            kExitOk);
  const auto fused = read_json(dir / "fused" / "metrics.json");
  EXPECT_EQ(fused["folds"][0]["accuracy"], metrics["folds"][0]["accuracy"]);
  EXPECT_EQ(testing::slurp(dir / "fused" / "confusion_all.csv"),
            testing::slurp(dir / "r1" / "eval" / "confusion_all.csv"));
}

TEST(Cli, CrossSubjectAndAdaptationProtocols) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli(synth_args(dir / "d")).code, kExitOk);
  ASSERT_EQ(run_cli(train_args(dir / "d", dir / "m")).code, kExitOk);
  const auto ckpt = (dir / "m" / "ai-lstm.ckpt").string();
  const Outcome cs = run_cli({"eval", "--data", (dir / "d").string(), "--checkpoint", ckpt,
                              "--protocol", "cross-subject", "--epochs", "1", "--jobs", "2",
                              "--out", (dir / "cs").string()});
  ASSERT_EQ(cs.code, kExitOk) << cs.err;
  const auto m = read_json(dir / "cs" / "metrics.json");
  EXPECT_EQ(m["folds"].size(), 3u);
  EXPECT_EQ(m["hyperparams"]["epochs"], 1);
  const eval::ExperimentResult back = eval::read_reports(dir / "cs");
  EXPECT_EQ(back.folds.size(), 3u);

  const Outcome ad = run_cli({"eval", "--data", (dir / "d").string(), "--checkpoint", ckpt,
                              "--protocol", "adaptation", "--epochs", "1", "--out",
                              (dir / "ad").string()});
  ASSERT_EQ(ad.code, kExitOk) << ad.err;
  EXPECT_EQ(read_json(dir / "ad" / "metrics.json")["folds"].size(), 6u);

  EXPECT_EQ(run_cli({"eval", "--data", (dir / "d").string(), "--checkpoint", ckpt, "--protocol",
                     "loo", "--out", (dir / "x").string()})
                .code,
            kExitUsage);
}

TEST(Cli, ExitCodesForModalityAndMismatch) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli(synth_args(dir / "d")).code, kExitOk);
  for (const char* model : {"cnn3d", "max-fusion"}) {
    const Outcome o = run_cli({"train", "--data", (dir / "d").string(), "--out",
                               (dir / "m").string(), "--model", model, "--epochs", "1"});
    EXPECT_EQ(o.code, kExitMissingModality) << model;
    EXPECT_NE(o.err.find("hand volumes"), std::string::npos) << o.err;
  }
  ASSERT_EQ(run_cli(train_args(dir / "d", dir / "m")).code, kExitOk);
  auto other = synth_args(dir / "d4");
  other[4] = "4";
  ASSERT_EQ(run_cli(other).code, kExitOk);
  EXPECT_EQ(run_cli({"eval", "--data", (dir / "d4").string(), "--checkpoint",
                     (dir / "m" / "ai-lstm.ckpt").string(), "--out", (dir / "e").string()})
                .code,
            kExitMismatch);
}

TEST(Cli, FusionTrainingWritesTwoCheckpoints) {
  testing::TempDir dir;
  auto s = synth_args(dir / "d", true);
  s.insert(s.end(), {"--patch", "60"});
  ASSERT_EQ(run_cli(s).code, kExitOk);
  const Outcome o = run_cli({"train", "--data", (dir / "d").string(), "--out",
                             (dir / "m").string(), "--model", "max-fusion", "--epochs", "1",
                             "--state-size", "4", "--patch", "60"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(fs::exists(dir / "m" / "ai-lstm.ckpt"));
  EXPECT_TRUE(fs::exists(dir / "m" / "cnn3d.ckpt"));
  const auto h = read_json(dir / "m" / "history.json");
  EXPECT_EQ(h["secondary_history"].size(), 1u);
  const Outcome e = run_cli({"eval", "--data", (dir / "d").string(), "--checkpoint",
                             (dir / "m" / "ai-lstm.ckpt").string(), "--checkpoint",
                             (dir / "m" / "cnn3d.ckpt").string(), "--out", (dir / "e").string()});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_EQ(read_json(dir / "e" / "metrics.json")["model"], "max-fusion(ai-lstm+cnn3d)");
}

std::vector<SkeletonFrame> wrist_stream(const std::vector<double>& speeds) {
  std::vector<SkeletonFrame> frames;
  double x = 0.0;
  for (std::size_t t = 0; t < speeds.size(); ++t) {
    SkeletonFrame f = testing::still_frame(static_cast<double>(t) / 30.0);
    f.joints3d[index_of(JointId::WristLeft)][0] = x;
    x += speeds[t];
    frames.push_back(f);
  }
  return frames;
}

TEST(Cli, SegmentFileLevel) {
  testing::TempDir dir;
  std::vector<double> speeds(100, 0.0);
  std::fill(speeds.begin() + 30, speeds.begin() + 70, 0.02);
  SignSample s;
  s.subject_id = "s";
  s.stem = "stream";
  s.frames = wrist_stream(speeds);
  write_text_file(dir / "moving.json", encode_skeleton_json(s));
  const Outcome o = run_cli({"segment", "--input", (dir / "moving.json").string(), "--threshold",
                             "0.005"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto segs = nlohmann::json::parse(o.out);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_NEAR(segs[0]["start"].get<double>(), 30, 3);
  EXPECT_NEAR(segs[0]["end"].get<double>(), 70, 3);

  s.frames = wrist_stream(std::vector<double>(60, 0.0));
  write_text_file(dir / "still.json", encode_skeleton_json(s));
  ASSERT_EQ(run_cli({"segment", "--input", (dir / "still.json").string(), "--out",
                     (dir / "segs.json").string()})
                .code,
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(testing::slurp(dir / "segs.json")).size(), 0u);

  std::vector<double> bursts(105, 0.0);
  std::fill(bursts.begin() + 20, bursts.begin() + 40, 0.02);
  std::fill(bursts.begin() + 45, bursts.begin() + 65, 0.02);
  s.frames = wrist_stream(bursts);
  write_text_file(dir / "bursts.json", encode_skeleton_json(s));
  const Outcome m = run_cli({"segment", "--input", (dir / "bursts.json").string(), "--threshold",
                             "0.005", "--window", "1"});
  ASSERT_EQ(m.code, kExitOk) << m.err;
  EXPECT_EQ(nlohmann::json::parse(m.out).size(), 1u);

  write_text_file(dir / "junk.json", "{not json");
  EXPECT_EQ(run_cli({"segment", "--input", (dir / "junk.json").string()}).code, kExitUsage);
  EXPECT_EQ(run_cli({"segment", "--input", (dir / "absent.json").string()}).code, kExitUsage);
}

TEST(Cli, FeaturesAndEmbeddings) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli(synth_args(dir / "d")).code, kExitOk);
  ASSERT_EQ(run_cli({"features", "--data", (dir / "d").string(), "--out",
                     (dir / "f.csv").string()})
                .code,
            kExitOk);
  const std::string csv = testing::slurp(dir / "f.csv");
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 127);
    ++rows;
  }
  EXPECT_EQ(rows, 19u);

  ASSERT_EQ(run_cli(train_args(dir / "d", dir / "m")).code, kExitOk);
  const Outcome e = run_cli({"embed", "--data", (dir / "d").string(), "--checkpoint",
                             (dir / "m" / "ai-lstm.ckpt").string(), "--out",
                             (dir / "e.csv").string()});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  std::istringstream ein(testing::slurp(dir / "e.csv"));
  std::getline(ein, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2 + 12 - 1);
}

}  // namespace
}  // namespace signrec::cli
