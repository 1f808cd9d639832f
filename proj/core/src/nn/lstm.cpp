// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/lstm.hpp"

#include "signrec/error.hpp"
#include "signrec/nn/dropout.hpp"

namespace signrec::nn {
namespace {

Matrix sigmoid(const Matrix& a) {
  return (1.0 + (-a.array()).exp()).inverse().matrix();
}

// W [h; x] + b without materializing the concatenation.
Matrix affine(const Param& w, const Param& b, const Matrix& h, const Matrix& x) {
  const Eigen::Index S = h.rows();
  Matrix out = w.value.leftCols(S) * h;
  out.noalias() += w.value.rightCols(x.rows()) * x;
  out.colwise() += b.value.col(0);
  return out;
}

}  // namespace

LstmParams::LstmParams(Eigen::Index input, Eigen::Index state)
    : input_dim(input),
      state_size(state),
      w_forget(state, state + input),
      w_input(state, state + input),
      w_candidate(state, state + input),
      w_output(state, state + input),
      b_forget(state, 1),
      b_input(state, 1),
      b_candidate(state, 1),
      b_output(state, 1) {}

void LstmParams::initialize(Rng& rng) {
  for (Param* w : {&w_forget, &w_input, &w_candidate, &w_output}) {
    xavier_uniform(w->value, state_size + input_dim, state_size, rng);
  }
  b_forget.value.setOnes();
  b_input.value.setZero();
  b_candidate.value.setZero();
  b_output.value.setZero();
}

void LstmParams::append_to(ParamList& out, const std::string& prefix) {
  out.push_back({prefix + "W_f", &w_forget, true, true});
  out.push_back({prefix + "W_i", &w_input, true, true});
  out.push_back({prefix + "W_c", &w_candidate, true, true});
  out.push_back({prefix + "W_o", &w_output, true, true});
  out.push_back({prefix + "b_f", &b_forget, false, true});
  out.push_back({prefix + "b_i", &b_input, false, true});
  out.push_back({prefix + "b_c", &b_candidate, false, true});
  out.push_back({prefix + "b_o", &b_output, false, true});
}

LstmState LstmState::zeros(Eigen::Index state_size, Eigen::Index batch) {
  LstmState s;
  s.h = Matrix::Zero(state_size, batch);
  s.c = Matrix::Zero(state_size, batch);
  return s;
}

LstmState lstm_cell_forward(const Matrix& x, const LstmState& prev, const LstmParams& p) {
  require(x.rows() == p.input_dim, "lstm input has " + std::to_string(x.rows()) +
                                       " rows, cell expects " + std::to_string(p.input_dim));
  require(prev.h.rows() == p.state_size && prev.c.rows() == p.state_size &&
              prev.h.cols() == x.cols() && prev.c.cols() == x.cols(),
          "lstm state shape does not match cell");
  LstmState s;
  s.forget = sigmoid(affine(p.w_forget, p.b_forget, prev.h, x));
  s.input = sigmoid(affine(p.w_input, p.b_input, prev.h, x));
  s.candidate = affine(p.w_candidate, p.b_candidate, prev.h, x).array().tanh().matrix();
  s.output = sigmoid(affine(p.w_output, p.b_output, prev.h, x));
  s.c = (s.forget.array() * prev.c.array() + s.input.array() * s.candidate.array()).matrix();
  s.tanh_c = s.c.array().tanh().matrix();
  s.h = (s.output.array() * s.tanh_c.array()).matrix();
  return s;
}

LstmTape lstm_forward(const std::vector<Matrix>& steps, std::span<const LstmParams> layers,
                      const LstmDropout& dropout) {
  require(!layers.empty(), "lstm_forward needs at least one layer");
  require(!steps.empty(), "lstm_forward needs at least one time step");
  const Eigen::Index batch = steps.front().cols();
  LstmTape tape;
  tape.batch = batch;
  tape.inputs.resize(layers.size());
  tape.states.resize(layers.size());
  tape.masks.resize(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LstmParams& p = layers[l];
    if (l == 0) {
      tape.inputs[0] = steps;
    } else {
      const auto& below = tape.states[l - 1];
      tape.inputs[l].reserve(below.size());
      const bool drop = dropout.rng != nullptr && dropout.keep < 1.0;
      for (const LstmState& s : below) {
        if (drop) {
          tape.masks[l].push_back(dropout_mask(s.h.rows(), s.h.cols(), dropout.keep, *dropout.rng));
          tape.inputs[l].push_back((s.h.array() * tape.masks[l].back().array()).matrix());
        } else {
          tape.inputs[l].push_back(s.h);
        }
      }
    }
    LstmState state = LstmState::zeros(p.state_size, batch);
    tape.states[l].reserve(tape.inputs[l].size());
    for (const Matrix& x : tape.inputs[l]) {
      require(x.cols() == batch, "inconsistent batch size across time steps");
      state = lstm_cell_forward(x, state, p);
      tape.states[l].push_back(state);
    }
  }
  return tape;
}

LstmTape lstm_forward(const Matrix& seq, std::span<const LstmParams> layers) {
  std::vector<Matrix> steps;
  steps.reserve(static_cast<std::size_t>(seq.rows()));
  for (Eigen::Index t = 0; t < seq.rows(); ++t) steps.push_back(seq.row(t).transpose());
  return lstm_forward(steps, layers);
}

void lstm_backward(const LstmTape& tape, std::span<LstmParams> layers, const Matrix& d_output) {
  if (tape.empty()) fail(ErrorCode::kInternal, "lstm_backward called without a forward tape");
  require(tape.states.size() == layers.size(), "tape/layer count mismatch");
  const Eigen::Index B = tape.batch;

  // dh arriving from above for every step of the current layer.
  const std::size_t T = tape.states.back().size();
  std::vector<Matrix> dh_from_above(T, Matrix::Zero(layers.back().state_size, B));
  dh_from_above.back() = d_output;

  for (std::size_t l = layers.size(); l-- > 0;) {
    LstmParams& p = layers[l];
    const Eigen::Index S = p.state_size;
    const Eigen::Index D = p.input_dim;
    const auto& states = tape.states[l];
    const auto& inputs = tape.inputs[l];
    std::vector<Matrix> dx(l > 0 ? T : 0);

    Matrix dh_next = Matrix::Zero(S, B);
    Matrix dc_next = Matrix::Zero(S, B);
    const Matrix zeros = Matrix::Zero(S, B);
    for (std::size_t t = T; t-- > 0;) {
      const LstmState& s = states[t];
      const Matrix& h_prev = t > 0 ? states[t - 1].h : zeros;
      const Matrix& c_prev = t > 0 ? states[t - 1].c : zeros;
      const Matrix& x = inputs[t];

      const Matrix dh = dh_from_above[t] + dh_next;
      const auto tc = s.tanh_c.array();
      const Matrix dc = (dc_next.array() + dh.array() * s.output.array() * (1.0 - tc * tc)).matrix();

      const Matrix da_o = (dh.array() * tc * s.output.array() * (1.0 - s.output.array())).matrix();
      const Matrix da_f =
          (dc.array() * c_prev.array() * s.forget.array() * (1.0 - s.forget.array())).matrix();
      const Matrix da_i =
          (dc.array() * s.candidate.array() * s.input.array() * (1.0 - s.input.array())).matrix();
      const Matrix da_c = (dc.array() * s.input.array() *
                           (1.0 - s.candidate.array() * s.candidate.array())).matrix();
      dc_next = (dc.array() * s.forget.array()).matrix();

      dh_next.setZero();
      Matrix dx_t = Matrix::Zero(D, B);
      const std::pair<Param*, const Matrix*> gates[] = {{&p.w_forget, &da_f},
                                                        {&p.w_input, &da_i},
                                                        {&p.w_candidate, &da_c},
                                                        {&p.w_output, &da_o}};
      Param* biases[] = {&p.b_forget, &p.b_input, &p.b_candidate, &p.b_output};
      for (std::size_t g = 0; g < 4; ++g) {
        Param& w = *gates[g].first;
        const Matrix& da = *gates[g].second;
        w.grad.leftCols(S).noalias() += da * h_prev.transpose();
        w.grad.rightCols(D).noalias() += da * x.transpose();
        biases[g]->grad.col(0) += da.rowwise().sum();
        dh_next.noalias() += w.value.leftCols(S).transpose() * da;
        if (l > 0) dx_t.noalias() += w.value.rightCols(D).transpose() * da;
      }
      if (l > 0) dx[t] = std::move(dx_t);
    }

    if (l > 0) {
      // Route through the inter-layer dropout mask into the layer below.
      for (std::size_t t = 0; t < T; ++t) {
        if (!tape.masks[l].empty()) {
          dh_from_above[t] = (dx[t].array() * tape.masks[l][t].array()).matrix();
        } else {
          dh_from_above[t] = std::move(dx[t]);
        }
      }
    }
  }
}

}  // namespace signrec::nn
