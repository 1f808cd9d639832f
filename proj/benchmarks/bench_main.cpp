// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "signrec/models/ai_lstm.hpp"
#include "signrec/models/hand_cnn.hpp"
#include "signrec/nn/conv3d.hpp"
#include "signrec/nn/lstm.hpp"
#include "signrec/rng.hpp"

namespace {

using signrec::Rng;
namespace nn = signrec::nn;

std::vector<nn::Matrix> random_steps(std::size_t T, Eigen::Index D, Eigen::Index B, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<nn::Matrix> steps(T, nn::Matrix(D, B));
  for (auto& m : steps) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  }
  return steps;
}

void BM_LstmForward(benchmark::State& state) {
  const auto S = static_cast<Eigen::Index>(state.range(0));
  const auto B = static_cast<Eigen::Index>(state.range(1));
  Rng rng(1);
  std::vector<nn::LstmParams> layers = {nn::LstmParams(6, S), nn::LstmParams(S, S)};
  for (auto& l : layers) l.initialize(rng);
  const auto steps = random_steps(20, 6, B, rng);
  for (auto _ : state) {
    auto tape = nn::lstm_forward(steps, layers);
    benchmark::DoNotOptimize(tape.output().data());
  }
  state.SetItemsProcessed(state.iterations() * B);
}
BENCHMARK(BM_LstmForward)->Args({50, 1})->Args({50, 64});

void BM_LstmForwardBackward(benchmark::State& state) {
  const auto S = static_cast<Eigen::Index>(state.range(0));
  const auto B = static_cast<Eigen::Index>(state.range(1));
  Rng rng(2);
  std::vector<nn::LstmParams> layers = {nn::LstmParams(6, S), nn::LstmParams(S, S)};
  for (auto& l : layers) l.initialize(rng);
  const auto steps = random_steps(20, 6, B, rng);
  const nn::Matrix d_out = nn::Matrix::Ones(S, B);
  for (auto _ : state) {
    auto tape = nn::lstm_forward(steps, layers);
    nn::lstm_backward(tape, layers, d_out);
    benchmark::DoNotOptimize(layers[0].w_forget.grad.data());
  }
  state.SetItemsProcessed(state.iterations() * B);
}
BENCHMARK(BM_LstmForwardBackward)->Args({50, 64});

void BM_Conv3dForward(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  nn::Conv3dLayer layer({3, 3, 3}, 3, K);
  layer.initialize(rng);
  signrec::Tensor volume({15, 32, 32, 3});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : volume.data()) v = u(rng);
  for (auto _ : state) {
    auto out = nn::conv3d_forward(volume, layer);
    benchmark::DoNotOptimize(out.data().data());
  }
}
BENCHMARK(BM_Conv3dForward)->Arg(8)->Arg(16);

void BM_Conv3dBackward(benchmark::State& state) {
  Rng rng(4);
  nn::Conv3dLayer layer({3, 3, 3}, 3, 8);
  layer.initialize(rng);
  signrec::Tensor volume({15, 32, 32, 3});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : volume.data()) v = u(rng);
  nn::Conv3dCache cache;
  const auto out = nn::conv3d_forward(volume, layer, &cache);
  signrec::Tensor d_out(out.shape(), 1.0);
  for (auto _ : state) {
    auto d_in = nn::conv3d_backward(d_out, cache, layer);
    benchmark::DoNotOptimize(d_in.data().data());
  }
}
BENCHMARK(BM_Conv3dBackward);

void BM_AiLstmPredict(benchmark::State& state) {
  Rng rng(5);
  signrec::models::AiLstmConfig cfg;
  cfg.classes = 20;
  signrec::models::AiLstmModel model(cfg, rng);
  signrec::SkelTensor x(20, 6);
  std::normal_distribution<double> g(0.0, 0.3);
  for (double& v : x.tensor().data()) v = g(rng);
  for (auto _ : state) {
    auto p = model.forward(x);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_AiLstmPredict);

void BM_HandCnnPredict(benchmark::State& state) {
  Rng rng(6);
  signrec::models::HandCnnConfig cfg;
  cfg.classes = 20;
  signrec::models::HandCnnModel model(cfg, rng);
  signrec::HandVolume left(15, 32, 32, 3), right(15, 32, 32, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : left.tensor().data()) v = u(rng);
  for (double& v : right.tensor().data()) v = u(rng);
  for (auto _ : state) {
    auto p = model.forward(left, right);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_HandCnnPredict);

}  // namespace

BENCHMARK_MAIN();
