// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_LSTM_HPP_
#define SIGNREC_NN_LSTM_HPP_

#include <span>
#include <string>
#include <vector>

#include "signrec/nn/parameters.hpp"

namespace signrec::nn {

/// One LSTM cell. Each gate weight is S x (S + D) and acts on [h_{t-1}; x_t];
/// the first S columns multiply the previous hidden state.
struct LstmParams {
  Eigen::Index input_dim = 0;
  Eigen::Index state_size = 0;
  Param w_forget, w_input, w_candidate, w_output;
  Param b_forget, b_input, b_candidate, b_output;

  LstmParams() = default;
  LstmParams(Eigen::Index input_dim, Eigen::Index state_size);

  /// Glorot-uniform gate weights; forget bias 1, other biases 0.
  void initialize(Rng& rng);
  void append_to(ParamList& out, const std::string& prefix);
};

/// Cell state for a batch of B columns. Gate activations are kept for BPTT.
struct LstmState {
  Matrix h;  // S x B
  Matrix c;  // S x B
  Matrix forget, input, candidate, output, tanh_c;

  static LstmState zeros(Eigen::Index state_size, Eigen::Index batch);
};

/// f = sig(W_f [h;x] + b_f), i = sig(W_i [h;x] + b_i), g = tanh(W_c [h;x] + b_c),
/// C = f*C_prev + i*g, o = sig(W_o [h;x] + b_o), h = o*tanh(C).
/// x is D x B (one column per sequence).
LstmState lstm_cell_forward(const Matrix& x, const LstmState& prev, const LstmParams& p);

/// Recorded forward pass of a stacked LSTM, consumed by lstm_backward.
struct LstmTape {
  Eigen::Index batch = 0;
  // inputs[l][t]: input of layer l at step t (after inter-layer dropout)
  std::vector<std::vector<Matrix>> inputs;
  std::vector<std::vector<LstmState>> states;
  // masks[l]: dropout masks applied to layer l's input (empty for l == 0)
  std::vector<std::vector<Matrix>> masks;

  bool empty() const { return states.empty(); }
  const Matrix& final_hidden(std::size_t layer) const { return states.at(layer).back().h; }
  const Matrix& output() const { return states.back().back().h; }
};

struct LstmDropout {
  double keep = 1.0;
  Rng* rng = nullptr;  // null disables dropout
};

/// Runs the stack from zero initial state. steps[t] is D x B. Layer l > 0
/// consumes layer l-1's hidden sequence, optionally through dropout.
LstmTape lstm_forward(const std::vector<Matrix>& steps, std::span<const LstmParams> layers,
                      const LstmDropout& dropout = {});
/// Single-sequence convenience: seq is T x D.
LstmTape lstm_forward(const Matrix& seq, std::span<const LstmParams> layers);

/// Full BPTT. d_output is dLoss/d(final hidden state of the top layer), S x B.
/// Gradients are accumulated into each layer's Param::grad.
void lstm_backward(const LstmTape& tape, std::span<LstmParams> layers, const Matrix& d_output);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_LSTM_HPP_
