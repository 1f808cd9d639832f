// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails. Pass criterion ids (AC1 ... AC9) on the
// command line to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "signrec/dataset.hpp"
#include "signrec/error.hpp"
#include "signrec/eval/evaluate.hpp"
#include "signrec/eval/experiment.hpp"
#include "signrec/hand_volume.hpp"
#include "signrec/models/ai_lstm.hpp"
#include "signrec/models/examples.hpp"
#include "signrec/models/features.hpp"
#include "signrec/models/fusion.hpp"
#include "signrec/models/hand_cnn.hpp"
#include "signrec/models/trainer.hpp"
#include "signrec/nn/checkpoint.hpp"
#include "signrec/nn/conv3d.hpp"
#include "signrec/nn/lstm.hpp"
#include "signrec/preprocess.hpp"
#include "signrec/rng.hpp"
#include "signrec/splits.hpp"
#include "signrec/synth.hpp"
#include "test_util.hpp"

namespace signrec::acceptance {
namespace {

using models::ModelKind;
using nn::Matrix;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void progress(const std::string& msg) {
  std::fprintf(stderr, "  .. %s\n", msg.c_str());
  std::fflush(stderr);
}

// ---------------------------------------------------------------- AC1

void randomize(models::Model& m, Rng& rng, double sd) {
  std::normal_distribution<double> g(0.0, sd);
  for (const auto& p : m.parameters()) {
    if (!p.trainable) continue;
    for (Eigen::Index i = 0; i < p.param->value.size(); ++i) p.param->value.data()[i] = g(rng);
  }
}

HandVolume random_volume(const Shape& s, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HandVolume v(s[0], s[1], s[2], s[3]);
  for (double& x : v.tensor().data()) x = u(rng);
  return v;
}

Verdict ac1_gradient_fidelity() {
  const auto t0 = Clock::now();
  constexpr std::size_t kClasses = 5;
  double worst = 0.0;
  std::string worst_where;
  std::size_t checks = 0;
  auto record = [&](const nn::GradcheckResult& r, const std::string& what) {
    ++checks;
    if (r.max_relative_error >= worst) {
      worst = r.max_relative_error;
      worst_where = what + ":" + r.worst_parameter;
    }
  };
  for (std::uint64_t seed : {1, 2, 3}) {
    for (bool spatial : {false, true}) {
      Rng rng(derive_seed(seed, spatial ? "ac1:spatial" : "ac1:ai-lstm"));
      models::AiLstmConfig c;
      c.state_size = 5;
      c.classes = kClasses;
      if (spatial) c = models::AiLstmConfig::spatial_variant(kClasses, 5);
      models::AiLstmModel m(c, rng);
      randomize(m, rng, 0.3);
      std::vector<models::Example> ex(4);
      for (std::size_t i = 0; i < ex.size(); ++i) {
        ex[i].joints = testing::random_skel(20, 6, rng);
        ex[i].augmented = spatial_augment(ex[i].joints);
        ex[i].label = static_cast<int>(i % kClasses);
      }
      record(models::gradcheck_model(m, models::batch_of(ex), 0.008, {1e-5, 16, seed}),
             spatial ? "spatial-ai-lstm" : "ai-lstm");
    }
    Rng rng(derive_seed(seed, "ac1:cnn3d"));
    models::HandCnnConfig c;
    c.input = {8, 12, 12, 3};
    c.convs = {{{{2, 3, 3}, 4}, {{2, 3, 3}, 4}, {{2, 2, 2}, 4}, {{1, 2, 2}, 4}}};
    c.fc1 = 12;
    c.fc2 = 8;
    c.classes = kClasses;
    models::HandCnnModel m(c, rng);
    randomize(m, rng, 0.3);
    std::vector<models::Example> ex(3);
    for (std::size_t i = 0; i < ex.size(); ++i) {
      ex[i].left_hand = random_volume(c.input, rng);
      ex[i].right_hand = random_volume(c.input, rng);
      ex[i].label = static_cast<int>(i);
    }
    record(models::gradcheck_model(m, models::batch_of(ex), 0.008, {1e-5, 16, seed}), "cnn3d");
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 120.0,
          fmt("max relative error %.2e (%s) over %zu checks, %.1f s", worst, worst_where.c_str(),
              checks, secs)};
}

// ---------------------------------------------------------------- AC2

Tensor random_tensor(const Shape& shape, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor t(shape);
  for (double& v : t.data()) v = u(rng);
  return t;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

double conv_oracle_at(const Tensor& x, const nn::Conv3dLayer& l, std::size_t f, std::size_t h,
                      std::size_t w, std::size_t k) {
  const std::size_t C = x.dim(3);
  long double s = l.bias.value(static_cast<Eigen::Index>(k), 0);
  for (std::size_t a = 0; a < l.kernel[0]; ++a)
    for (std::size_t b = 0; b < l.kernel[1]; ++b)
      for (std::size_t c = 0; c < l.kernel[2]; ++c)
        for (std::size_t ch = 0; ch < C; ++ch) {
          const std::size_t col = ((a * l.kernel[1] + b) * l.kernel[2] + c) * C + ch;
          s += static_cast<long double>(
                   l.weight.value(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col))) *
               x(f + a, h + b, w + c, ch);
        }
  return static_cast<double>(s);
}

double oracle_sigmoid(long double v) { return static_cast<double>(1.0L / (1.0L + std::exp(-v))); }

struct MomentOracle {
  std::array<double, models::kStatsPerSeries> operator()(const std::vector<double>& s) const {
    const long double n = static_cast<long double>(s.size());
    long double sum = 0, area = 0, energy = 0;
    for (std::size_t t = 0; t < s.size(); ++t) {
      sum += s[t];
      area += std::fabs(static_cast<long double>(s[t]));
      if (t > 0) energy += static_cast<long double>(s[t] - s[t - 1]) * (s[t] - s[t - 1]);
    }
    const long double mu = sum / n;
    long double m2 = 0, m3 = 0, m4 = 0;
    for (double v : s) {
      const long double d = v - mu;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const long double sigma = std::sqrt(m2);
    const long double skew = sigma < 1e-12L ? 0 : m3 / (sigma * sigma * sigma);
    const long double kurt = sigma < 1e-12L ? 0 : m4 / (m2 * m2) - 3;
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    return {static_cast<double>(mu), static_cast<double>(area),   static_cast<double>(skew),
            static_cast<double>(kurt), static_cast<double>(energy), *hi - *lo,
            static_cast<double>(m2)};
  }
};

Verdict ac2_oracle_equivalence() {
  const auto t0 = Clock::now();
  constexpr std::size_t kInstances = 120;
  std::map<std::string, double> err;
  Rng rng(derive_seed(2, "ac2"));
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto note = [&](const char* what, double e) { err[what] = std::max(err[what], e); };

  for (std::size_t n = 0; n < kInstances; ++n) {
    const nn::Extent3 k{pick(1, 3), pick(1, 3), pick(1, 3)};
    nn::Conv3dLayer layer(k, pick(1, 3), pick(1, 4));
    layer.initialize(rng);
    layer.bias.value = random_matrix(static_cast<Eigen::Index>(layer.out_channels), 1, rng);
    const Tensor x = random_tensor({k[0] + pick(0, 3), k[1] + pick(0, 4), k[2] + pick(0, 4),
                                    layer.in_channels},
                                   rng);
    const Tensor y = nn::conv3d_forward(x, layer);
    const Shape want = {x.dim(0) - k[0] + 1, x.dim(1) - k[1] + 1, x.dim(2) - k[2] + 1,
                        layer.out_channels};
    if (y.shape() != want) note("conv3d", INFINITY);
    for (std::size_t f = 0; f < want[0]; ++f)
      for (std::size_t h = 0; h < want[1]; ++h)
        for (std::size_t w = 0; w < want[2]; ++w)
          for (std::size_t o = 0; o < want[3]; ++o)
            note("conv3d", std::fabs(y(f, h, w, o) - conv_oracle_at(x, layer, f, h, w, o)));
  }

  for (std::size_t n = 0; n < kInstances; ++n) {
    const nn::Extent3 win{pick(1, 3), pick(1, 3), pick(1, 3)};
    const nn::Extent3 stride{pick(1, 3), pick(1, 3), pick(1, 3)};
    const Tensor x =
        random_tensor({win[0] + pick(0, 4), win[1] + pick(0, 4), win[2] + pick(0, 4), pick(1, 3)}, rng);
    const nn::PoolResult p = nn::maxpool3d(x, win, stride);
    Shape want(4);
    for (std::size_t a = 0; a < 3; ++a) want[a] = (x.dim(a) - win[a]) / stride[a] + 1;
    want[3] = x.dim(3);
    if (p.output.shape() != want) note("maxpool3d", INFINITY);
    for (std::size_t f = 0; f < want[0]; ++f)
      for (std::size_t h = 0; h < want[1]; ++h)
        for (std::size_t w = 0; w < want[2]; ++w)
          for (std::size_t c = 0; c < want[3]; ++c) {
            double m = -INFINITY;
            for (std::size_t a = 0; a < win[0]; ++a)
              for (std::size_t b = 0; b < win[1]; ++b)
                for (std::size_t d = 0; d < win[2]; ++d)
                  m = std::max(m, x(f * stride[0] + a, h * stride[1] + b, w * stride[2] + d, c));
            note("maxpool3d", std::fabs(p.output(f, h, w, c) - m));
          }
  }

  for (std::size_t n = 0; n < kInstances; ++n) {
    const auto D = static_cast<Eigen::Index>(pick(1, 6));
    const auto S = static_cast<Eigen::Index>(pick(1, 6));
    const auto B = static_cast<Eigen::Index>(pick(1, 4));
    nn::LstmParams p(D, S);
    for (nn::Param* q : {&p.w_forget, &p.w_input, &p.w_candidate, &p.w_output, &p.b_forget,
                         &p.b_input, &p.b_candidate, &p.b_output}) {
      q->value = random_matrix(q->value.rows(), q->value.cols(), rng);
    }
    const Matrix x = random_matrix(D, B, rng);
    nn::LstmState prev = nn::LstmState::zeros(S, B);
    prev.h = random_matrix(S, B, rng);
    prev.c = random_matrix(S, B, rng);
    const nn::LstmState s = nn::lstm_cell_forward(x, prev, p);
    for (Eigen::Index b = 0; b < B; ++b) {
      for (Eigen::Index i = 0; i < S; ++i) {
        auto gate = [&](const nn::Param& w, const nn::Param& bias) {
          long double z = bias.value(i, 0);
          for (Eigen::Index j = 0; j < S; ++j) z += static_cast<long double>(w.value(i, j)) * prev.h(j, b);
          for (Eigen::Index j = 0; j < D; ++j) z += static_cast<long double>(w.value(i, S + j)) * x(j, b);
          return z;
        };
        const double f = oracle_sigmoid(gate(p.w_forget, p.b_forget));
        const double in = oracle_sigmoid(gate(p.w_input, p.b_input));
        const double g = static_cast<double>(std::tanh(gate(p.w_candidate, p.b_candidate)));
        const double o = oracle_sigmoid(gate(p.w_output, p.b_output));
        const double c = f * prev.c(i, b) + in * g;
        const double h = o * std::tanh(c);
        note("lstm_cell_forward", std::max(std::fabs(s.c(i, b) - c), std::fabs(s.h(i, b) - h)));
      }
    }
  }

  const MomentOracle moments;
  for (std::size_t n = 0; n < kInstances; ++n) {
    const std::size_t T = pick(2, 40);
    SkelTensor x = testing::random_skel(T, 6, rng);
    if (n % 10 == 0) {
      for (std::size_t t = 0; t < T; ++t) x(t, n % 6, 1) = 0.25;  // constant series
    }
    const nn::Vector got = models::extract_features126(x);
    if (got.size() != 126) note("extract_features126", INFINITY);
    std::vector<double> series(T);
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t t = 0; t < T; ++t) series[t] = x(t, j, a);
        const auto want = moments(series);
        for (std::size_t k = 0; k < want.size(); ++k) {
          note("extract_features126",
               std::fabs(got[static_cast<Eigen::Index>((j * 3 + a) * 7 + k)] - want[k]));
        }
      }
  }

  bool ok = true;
  std::string detail;
  for (const auto& [name, e] : err) {
    ok = ok && e <= 1e-12;
    detail += fmt("%s %.1e, ", name.c_str(), e);
  }
  const double secs = seconds_since(t0);
  ok = ok && err.size() == 4 && secs < 60.0;
  return {ok, detail + fmt("%zu instances each, %.1f s", kInstances, secs)};
}

// ---------------------------------------------------------------- AC3

Verdict ac3_overfit() {
  const auto t0 = Clock::now();
  SynthConfig c;
  c.num_classes = 5;
  c.num_subjects = 5;
  c.samples_per_class_per_subject = 20;
  c.with_hands = false;
  c.rng_seed = 3;
  const Dataset d = generate_synthetic(c);
  const auto train = models::make_examples(d, models::input_needs(ModelKind::kAiLstm));
  models::Hyperparams hp;
  hp.learning_rate = 5e-5;
  hp.batch_size = 64;
  hp.dropout_keep = 0.5;
  hp.l2_beta = 0.008;
  hp.epochs = 300;
  hp.seed = 3;
  models::ModelSpec spec;
  spec.kind = ModelKind::kAiLstm;
  spec.state_size = 50;
  spec.lstm_layers = 2;
  std::optional<std::size_t> first;
  const auto trained = models::fit(spec, train, hp, d.vocabulary, [&](const models::EpochRecord& r) {
    if (!first && r.train_accuracy >= 0.99) first = r.epoch;
    if (r.epoch % 50 == 0) progress(fmt("AC3 epoch %zu train accuracy %.3f", r.epoch, r.train_accuracy));
  });
  const auto batch = models::batch_of(train);
  const double acc = static_cast<double>(models::count_correct(trained.scorer()->predict(batch),
                                                               models::labels_of(batch))) /
                     static_cast<double>(train.size());
  const double secs = seconds_since(t0);
  return {acc >= 0.99 && secs < 600.0,
          fmt("%zu samples, training accuracy %.4f after %zu epochs (training-mode pass first "
              ">= 0.99 at epoch %s), %.0f s",
              train.size(), acc, hp.epochs, first ? std::to_string(*first).c_str() : "never", secs)};
}

// ---------------------------------------------------------------- AC4 / AC5

constexpr std::array<std::pair<int, int>, 4> kTwinPairs = {{{0, 1}, {2, 3}, {4, 5}, {6, 7}}};

SynthConfig ordering_dataset(std::uint64_t seed) {
  SynthConfig c;
  c.num_classes = 20;
  c.num_subjects = 12;
  c.samples_per_class_per_subject = 3;
  c.frame_length_range = {30, 60};
  c.twin_class_pairs.assign(kTwinPairs.begin(), kTwinPairs.end());
  c.relation_class_pairs = {{8, 9}, {10, 11}, {12, 13}, {14, 15}};
  c.relation_offset = 0.05;
  c.position_jitter = 0.2;
  c.with_hands = true;
  c.hand_frames = 8;
  c.patch = 60;
  c.patch_out = 12;
  c.rng_seed = seed;
  return c;
}

models::Hyperparams desk_hyperparams(std::uint64_t seed) {
  models::Hyperparams hp;
  hp.learning_rate = 1e-3;
  hp.l2_beta = 0.008;
  hp.dropout_keep = 0.5;
  hp.epochs = 30;
  hp.batch_size = 32;
  hp.seed = seed;
  return hp;
}

models::ModelSpec desk_spec(ModelKind kind) {
  models::ModelSpec spec;
  spec.kind = kind;
  spec.state_size = 32;
  spec.cnn.convs = {{{{2, 3, 3}, 8}, {{2, 3, 3}, 16}, {{2, 2, 2}, 16}, {{1, 2, 2}, 16}}};
  spec.cnn.fc1 = 64;
  spec.cnn.fc2 = 32;
  return spec;
}

struct OrderingRun {
  std::uint64_t seed = 0;
  double ai_lstm = 0.0;   // cross-subject mean accuracy
  double spatial = 0.0;
  double fusion = 0.0;
  double twin_ai_lstm = 0.0;  // mean pairwise accuracy over twin pairs and folds
  double twin_fusion = 0.0;
  double seconds = 0.0;
};

OrderingRun run_ordering(std::uint64_t seed) {
  const auto t0 = Clock::now();
  const Dataset d = generate_synthetic(ordering_dataset(seed));
  OrderingRun run;
  run.seed = seed;

  // The fusion members are an AI-LSTM and a hand CNN trained independently
  // under identical settings, so each fold also yields the AI-LSTM score.
  eval::ExperimentOptions o;
  o.hp = desk_hyperparams(seed);
  o.spec = desk_spec(ModelKind::kMaxFusion);
  double lstm_sum = 0.0, twin_lstm = 0.0, twin_fusion = 0.0;
  std::size_t folds = 0, pairs = 0;
  o.on_fold = [&](const eval::EvalReport&, const models::TrainedModel& tm,
                  const std::vector<models::Example>& test) {
    lstm_sum += eval::evaluate(*tm.primary, test, "").accuracy;
    ++folds;
    const auto fused = tm.scorer();
    for (const auto& [a, b] : kTwinPairs) {
      const auto l = eval::pairwise_accuracy(*tm.primary, test, a, b);
      const auto f = eval::pairwise_accuracy(*fused, test, a, b);
      if (!l || !f) continue;
      twin_lstm += *l;
      twin_fusion += *f;
      ++pairs;
    }
  };
  const auto fusion = eval::cross_subject_experiment(d, o);
  run.fusion = fusion.mean_accuracy;
  run.ai_lstm = lstm_sum / static_cast<double>(folds);
  run.twin_ai_lstm = twin_lstm / static_cast<double>(pairs);
  run.twin_fusion = twin_fusion / static_cast<double>(pairs);
  progress(fmt("seed %llu: ai-lstm %.3f, max-fusion %.3f (%.0f s)",
               static_cast<unsigned long long>(seed), run.ai_lstm, run.fusion, seconds_since(t0)));

  o.on_fold = {};
  o.spec = desk_spec(ModelKind::kSpatialAiLstm);
  run.spatial = eval::cross_subject_experiment(d, o).mean_accuracy;
  run.seconds = seconds_since(t0);
  progress(fmt("seed %llu: spatial-ai-lstm %.3f (%.0f s)", static_cast<unsigned long long>(seed),
               run.spatial, run.seconds));
  return run;
}

const std::vector<OrderingRun>& ordering_runs() {
  static const std::vector<OrderingRun> runs = [] {
    std::vector<OrderingRun> out;
    for (std::uint64_t seed : {11, 12, 13}) out.push_back(run_ordering(seed));
    return out;
  }();
  return runs;
}

Verdict ac4_architecture_ordering() {
  const auto& runs = ordering_runs();
  std::size_t spatial_wins = 0, fusion_wins = 0;
  double secs = 0.0;
  std::string detail;
  for (const OrderingRun& r : runs) {
    spatial_wins += r.spatial - r.ai_lstm >= 0.03 ? 1 : 0;
    fusion_wins += r.fusion - r.ai_lstm >= 0.03 ? 1 : 0;
    secs += r.seconds;
    detail += fmt("seed %llu: ai-lstm %.3f spatial %.3f fusion %.3f; ",
                  static_cast<unsigned long long>(r.seed), r.ai_lstm, r.spatial, r.fusion);
  }
  const bool ok = 2 * spatial_wins > runs.size() && 2 * fusion_wins > runs.size() && secs < 7200.0;
  return {ok, detail + fmt("spatial +3pp in %zu/%zu, fusion +3pp in %zu/%zu, %.0f s", spatial_wins,
                           runs.size(), fusion_wins, runs.size(), secs)};
}

Verdict ac5_fusion_repair() {
  const auto& runs = ordering_runs();
  bool ok = true;
  std::string detail;
  for (const OrderingRun& r : runs) {
    ok = ok && r.twin_ai_lstm <= 0.60 && r.twin_fusion >= 0.90;
    detail += fmt("seed %llu: twin pairwise ai-lstm %.3f fusion %.3f; ",
                  static_cast<unsigned long long>(r.seed), r.twin_ai_lstm, r.twin_fusion);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// ---------------------------------------------------------------- AC6

const std::vector<double> kFractions = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};

SynthConfig adaptation_dataset(std::uint64_t seed) {
  SynthConfig c;
  c.num_classes = 10;
  c.num_subjects = 4;
  c.samples_per_class_per_subject = 20;
  c.with_hands = false;
  c.subject_variation.scale_range = {0.75, 1.25};
  c.subject_variation.speed_range = {0.7, 1.3};
  c.subject_variation.offset_range = 0.2;
  c.subject_variation.style = 0.4;
  c.rng_seed = seed;
  return c;
}

Verdict ac6_adaptation_trend() {
  const auto t0 = Clock::now();
  constexpr std::size_t kTargets = 2;
  const std::vector<std::uint64_t> seeds = {21, 22, 23};
  std::vector<double> curve(kFractions.size(), 0.0);
  for (std::uint64_t seed : seeds) {
    const Dataset d = generate_synthetic(adaptation_dataset(seed));
    eval::ExperimentOptions o;
    o.hp = desk_hyperparams(seed);
    o.hp.epochs = 80;
    o.spec = desk_spec(ModelKind::kAiLstm);
    for (std::size_t s = 0; s < kTargets; ++s) {
      const auto r = eval::adaptation_curve(d, d.subjects[s], kFractions, o);
      std::string line;
      for (std::size_t i = 0; i < r.folds.size(); ++i) {
        curve[i] += r.folds[i].accuracy / static_cast<double>(seeds.size() * kTargets);
        line += fmt(" %.3f", r.folds[i].accuracy);
      }
      progress(fmt("seed %llu %s:%s", static_cast<unsigned long long>(seed), d.subjects[s].c_str(),
                   line.c_str()));
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    monotone = monotone && curve[i] >= curve[i - 1] - 0.02;
  }
  const double gap = curve.back() - curve.front();
  const double recovered = gap > 0.0 ? (curve[1] - curve.front()) / gap : 0.0;
  std::string pts;
  for (std::size_t i = 0; i < curve.size(); ++i) pts += fmt("%.1f:%.3f ", kFractions[i], curve[i]);
  return {monotone && gap > 0.0 && recovered >= 0.5,
          fmt("mean curve %s; gap %.3f, fraction 0.1 recovers %.0f%%, %.0f s", pts.c_str(), gap,
              100.0 * recovered, seconds_since(t0))};
}

// ---------------------------------------------------------------- AC7

std::vector<SampleKey> keys_of(const Dataset& d) {
  std::vector<SampleKey> out;
  for (const SamplePtr& s : d.samples) out.push_back(s->key());
  return out;
}

Verdict ac7_split_soundness() {
  SynthConfig c = ordering_dataset(7);
  c.with_hands = false;
  const Dataset d = generate_synthetic(c);
  std::set<SampleKey> all;
  for (const SamplePtr& s : d.samples) all.insert(s->key());
  std::size_t splits = 0, problems = 0;
  auto check_disjoint = [&](const Split& sp) {
    ++splits;
    std::set<SampleKey> train;
    for (const SampleKey& k : keys_of(sp.train)) problems += train.insert(k).second ? 0 : 1;
    for (const SampleKey& k : keys_of(sp.test)) problems += train.count(k);
    try {
      audit_disjoint(sp.train, sp.test);
    } catch (const Error&) {
      ++problems;
    }
  };
  for (const std::string& subject : d.subjects) {
    const Split cs = split_cross_subject(d, subject);
    check_disjoint(cs);
    if (cs.train.samples.size() + cs.test.samples.size() != all.size()) ++problems;
    for (const SamplePtr& s : cs.test.samples) problems += s->subject_id == subject ? 0 : 1;
    for (const SamplePtr& s : cs.train.samples) problems += s->subject_id != subject ? 0 : 1;

    for (std::uint64_t seed : {1, 2}) {
      std::optional<std::vector<SampleKey>> test_half;
      std::vector<SampleKey> previous_pool;
      for (double f : kFractions) {
        const Split ad = split_adaptation(d, subject, f, seed);
        check_disjoint(ad);
        const auto test = keys_of(ad.test);
        if (!test_half) test_half = test;
        problems += test == *test_half ? 0 : 1;
        std::vector<SampleKey> pool;
        for (const SamplePtr& s : ad.train.samples) {
          if (s->subject_id == subject) pool.push_back(s->key());
        }
        // Larger fractions extend the adaptation pool.
        problems += std::equal(previous_pool.begin(), previous_pool.end(), pool.begin()) ? 0 : 1;
        previous_pool = pool;
      }
    }
  }
  return {problems == 0, fmt("%zu splits audited over %zu subjects, %zu violations", splits,
                             d.subjects.size(), problems)};
}

// ---------------------------------------------------------------- AC8

int run_cli(const std::vector<std::string>& args, std::string* err) {
  std::ostringstream out, errs;
  const int code = cli::run(args, out, errs);
  if (err != nullptr) *err = errs.str();
  return code;
}

Verdict ac8_determinism() {
  const testing::TempDir dir;
  const std::string data = (dir / "data").string();
  std::string err;
  if (run_cli({"synth", "--out", data, "--classes", "4", "--subjects", "3", "--samples", "3",
               "--patch", "40", "--seed", "8"},
              &err) != 0) {
    return {false, "synth failed: " + err};
  }
  std::size_t files = 0;
  for (const char* run : {"run1", "run2"}) {
    const auto root = dir / run;
    if (run_cli({"train", "--data", data, "--out", (root / "model").string(), "--model",
                 "max-fusion", "--epochs", "3", "--state-size", "8", "--batch-size", "8",
                 "--seed", "5"},
                &err) != 0) {
      return {false, std::string("train failed: ") + err};
    }
    const auto ckpts = std::vector<std::string>{(root / "model" / "ai-lstm.ckpt").string(),
                                                (root / "model" / "cnn3d.ckpt").string()};
    if (run_cli({"eval", "--data", data, "--checkpoint", ckpts[0], "--checkpoint", ckpts[1],
                 "--out", (root / "eval").string()},
                &err) != 0 ||
        run_cli({"eval", "--data", data, "--checkpoint", ckpts[0], "--protocol", "cross-subject",
                 "--epochs", "2", "--jobs", "2", "--seed", "5", "--out", (root / "cs").string()},
                &err) != 0) {
      return {false, std::string("eval failed: ") + err};
    }
    files = testing::tree_contents(root).size();
  }
  const bool same = testing::tree_contents(dir / "run1") == testing::tree_contents(dir / "run2");
  return {same && files > 0,
          fmt("%zu files (checkpoints, reports) %s across two runs", files,
              same ? "byte-identical" : "DIFFER")};
}

// ---------------------------------------------------------------- AC9

Verdict ac9_round_trips() {
  const testing::TempDir dir;
  SynthConfig c = testing::small_synth(3, 2, 2, true);
  const Dataset d = generate_synthetic(c);
  save_dataset(d, dir / "a");
  const LoadResult loaded = load_dataset(dir / "a");
  save_dataset(loaded.dataset, dir / "b");
  const bool dataset_ok = testing::tree_contents(dir / "a") == testing::tree_contents(dir / "b") &&
                          same_contents(d, loaded.dataset);

  const HandVolumePair& vols = *d.samples.front()->hand_volumes;
  write_hpv(dir / "x.hpv", vols);
  const HandVolumePair back = read_hpv(dir / "x.hpv");
  write_hpv(dir / "y.hpv", back);
  const bool hpv_ok = back == vols && testing::slurp(dir / "x.hpv") == testing::slurp(dir / "y.hpv") &&
                      encode_hpv(back) == encode_hpv(vols);

  bool ckpt_ok = true;
  for (ModelKind kind : {ModelKind::kAiLstm, ModelKind::kSpatialAiLstm, ModelKind::kCnn3d,
                         ModelKind::kBaseline}) {
    models::ModelSpec spec = desk_spec(kind);
    spec.state_size = 6;
    spec.cnn.input = vols.left.tensor().shape();
    spec.cnn.convs = {{{{2, 3, 3}, 2}, {{1, 2, 2}, 2}, {{1, 1, 1}, 2}, {{1, 1, 1}, 2}}};
    spec.cnn.fc1 = 4;
    spec.cnn.fc2 = 4;
    Rng init = make_rng(9, "init");
    auto m = models::build_model(spec, kind, d.num_classes(), init);
    const nn::Checkpoint ck = models::make_checkpoint(*m, models::Hyperparams{}, 1e-3, d.vocabulary);
    const std::string name(models::model_kind_name(kind));
    nn::save_checkpoint(dir / (name + "-1.ckpt"), ck);
    const nn::Checkpoint re = nn::load_checkpoint(dir / (name + "-1.ckpt"));
    nn::save_checkpoint(dir / (name + "-2.ckpt"), re);
    ckpt_ok = ckpt_ok && re == ck &&
              testing::slurp(dir / (name + "-1.ckpt")) == testing::slurp(dir / (name + "-2.ckpt"));
  }
  return {dataset_ok && hpv_ok && ckpt_ok,
          fmt("dataset (%zu samples) %s, .hpv %s, checkpoints (4 architectures) %s",
              d.samples.size(), dataset_ok ? "identical" : "DIFFER", hpv_ok ? "identical" : "DIFFER",
              ckpt_ok ? "identical" : "DIFFER")};
}

// ----------------------------------------------------------------

struct Criterion {
  const char* id;
  const char* title;
  std::function<Verdict()> check;
};

}  // namespace
}  // namespace signrec::acceptance

int main(int argc, char** argv) {
  using namespace signrec::acceptance;
  const std::vector<Criterion> criteria = {
      {"AC1", "gradient fidelity", ac1_gradient_fidelity},
      {"AC2", "oracle equivalence", ac2_oracle_equivalence},
      {"AC3", "overfit sanity", ac3_overfit},
      {"AC4", "architecture ordering", ac4_architecture_ordering},
      {"AC5", "fusion confusion repair", ac5_fusion_repair},
      {"AC6", "adaptation trend", ac6_adaptation_trend},
      {"AC7", "split soundness", ac7_split_soundness},
      {"AC8", "determinism", ac8_determinism},
      {"AC9", "format round-trips", ac9_round_trips},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!wanted.empty() && wanted.count(c.id) == 0) continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s  %s: %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
