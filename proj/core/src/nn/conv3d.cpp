// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/conv3d.hpp"

#include <algorithm>
#include <cstring>

#include "signrec/error.hpp"

namespace signrec::nn {
namespace {

using ConstMap = Eigen::Map<const Matrix>;
using MutMap = Eigen::Map<Matrix>;

}  // namespace

Conv3dLayer::Conv3dLayer(Extent3 k, std::size_t cin, std::size_t cout)
    : kernel(k),
      in_channels(cin),
      out_channels(cout),
      weight(static_cast<Eigen::Index>(cout), static_cast<Eigen::Index>(k[0] * k[1] * k[2] * cin)),
      bias(static_cast<Eigen::Index>(cout), 1) {
  require(k[0] > 0 && k[1] > 0 && k[2] > 0 && cin > 0 && cout > 0,
          "conv3d dimensions must be positive");
}

void Conv3dLayer::initialize(Rng& rng) {
  he_normal(weight.value, static_cast<Eigen::Index>(patch_size()), rng);
  bias.value.setZero();
}

void Conv3dLayer::append_to(ParamList& out, const std::string& prefix) {
  out.push_back({prefix + "kernel", &weight, false, true});
  out.push_back({prefix + "bias", &bias, false, true});
}

Shape conv3d_output_shape(const Shape& input, const Extent3& kernel, std::size_t out_channels) {
  require(input.size() == 4, "conv3d input must be F x H x W x C");
  for (std::size_t a = 0; a < 3; ++a) {
    if (kernel[a] > input[a]) {
      fail(ErrorCode::kInvalidArgument, "conv3d kernel " + std::to_string(kernel[0]) + "x" +
                                            std::to_string(kernel[1]) + "x" +
                                            std::to_string(kernel[2]) +
                                            " larger than input " + shape_string(input));
    }
  }
  return {input[0] - kernel[0] + 1, input[1] - kernel[1] + 1, input[2] - kernel[2] + 1,
          out_channels};
}

Shape pool3d_output_shape(const Shape& input, const Extent3& window, const Extent3& stride) {
  require(input.size() == 4, "pool input must be F x H x W x C");
  Shape out(4);
  for (std::size_t a = 0; a < 3; ++a) {
    if (window[a] > input[a] || window[a] == 0 || stride[a] == 0) {
      fail(ErrorCode::kInvalidArgument, "pool window does not fit input " + shape_string(input));
    }
    out[a] = (input[a] - window[a]) / stride[a] + 1;
  }
  out[3] = input[3];
  return out;
}

Tensor conv3d_forward(const Tensor& volume, const Conv3dLayer& layer, Conv3dCache* cache) {
  require(volume.rank() == 4 && volume.dim(3) == layer.in_channels,
          "conv3d input " + shape_string(volume.shape()) + " does not have " +
              std::to_string(layer.in_channels) + " channels");
  const Shape out_shape = conv3d_output_shape(volume.shape(), layer.kernel, layer.out_channels);
  const std::size_t H = volume.dim(1), W = volume.dim(2), C = volume.dim(3);
  const std::size_t Fo = out_shape[0], Ho = out_shape[1], Wo = out_shape[2];
  const std::size_t kt = layer.kernel[0], kh = layer.kernel[1], kw = layer.kernel[2];
  const std::size_t P = Fo * Ho * Wo;
  const std::size_t row_run = kw * C;  // contiguous (dw, c) run in the input

  Matrix columns(static_cast<Eigen::Index>(layer.patch_size()), static_cast<Eigen::Index>(P));
  const double* in = volume.data().data();
  for (std::size_t f = 0; f < Fo; ++f) {
    for (std::size_t h = 0; h < Ho; ++h) {
      for (std::size_t w = 0; w < Wo; ++w) {
        const std::size_t p = (f * Ho + h) * Wo + w;
        double* col = columns.data() + p * layer.patch_size();
        for (std::size_t dt = 0; dt < kt; ++dt) {
          for (std::size_t dh = 0; dh < kh; ++dh) {
            const double* src = in + (((f + dt) * H + (h + dh)) * W + w) * C;
            std::memcpy(col, src, row_run * sizeof(double));
            col += row_run;
          }
        }
      }
    }
  }

  Tensor out(out_shape);
  MutMap result(out.data().data(), static_cast<Eigen::Index>(layer.out_channels),
                static_cast<Eigen::Index>(P));
  result.noalias() = layer.weight.value * columns;
  result.colwise() += layer.bias.value.col(0);
  if (cache) {
    cache->input_shape = volume.shape();
    cache->columns = std::move(columns);
  }
  return out;
}

Tensor conv3d_backward(const Tensor& d_output, const Conv3dCache& cache, Conv3dLayer& layer,
                       bool input_grad) {
  if (cache.empty()) fail(ErrorCode::kInternal, "conv3d_backward called without a forward cache");
  const auto K = static_cast<Eigen::Index>(layer.out_channels);
  const Eigen::Index P = cache.columns.cols();
  require(d_output.size() == static_cast<std::size_t>(K * P), "conv3d gradient shape mismatch");
  ConstMap d_out(d_output.data().data(), K, P);
  layer.weight.grad.noalias() += d_out * cache.columns.transpose();
  layer.bias.grad.col(0) += d_out.rowwise().sum();
  if (!input_grad) return {};

  const Matrix d_columns = layer.weight.value.transpose() * d_out;
  const Shape& in_shape = cache.input_shape;
  const std::size_t H = in_shape[1], W = in_shape[2], C = in_shape[3];
  const Shape out_shape = conv3d_output_shape(in_shape, layer.kernel, layer.out_channels);
  const std::size_t Ho = out_shape[1], Wo = out_shape[2];
  const std::size_t kt = layer.kernel[0], kh = layer.kernel[1];
  const std::size_t row_run = layer.kernel[2] * C;
  Tensor d_input(in_shape);
  double* din = d_input.data().data();
  for (std::size_t f = 0; f < out_shape[0]; ++f) {
    for (std::size_t h = 0; h < Ho; ++h) {
      for (std::size_t w = 0; w < Wo; ++w) {
        const std::size_t p = (f * Ho + h) * Wo + w;
        const double* col = d_columns.data() + p * layer.patch_size();
        for (std::size_t dt = 0; dt < kt; ++dt) {
          for (std::size_t dh = 0; dh < kh; ++dh) {
            double* dst = din + (((f + dt) * H + (h + dh)) * W + w) * C;
            for (std::size_t i = 0; i < row_run; ++i) dst[i] += col[i];
            col += row_run;
          }
        }
      }
    }
  }
  return d_input;
}

PoolResult maxpool3d(const Tensor& volume, const Extent3& window, const Extent3& stride) {
  const Shape out_shape = pool3d_output_shape(volume.shape(), window, stride);
  const std::size_t H = volume.dim(1), W = volume.dim(2), C = volume.dim(3);
  PoolResult r;
  r.input_shape = volume.shape();
  r.output = Tensor(out_shape);
  r.argmax.resize(r.output.size());
  const auto in = volume.data();
  std::size_t o = 0;
  for (std::size_t f = 0; f < out_shape[0]; ++f) {
    for (std::size_t h = 0; h < out_shape[1]; ++h) {
      for (std::size_t w = 0; w < out_shape[2]; ++w) {
        for (std::size_t c = 0; c < C; ++c, ++o) {
          std::size_t best = ((f * stride[0] * H + h * stride[1]) * W + w * stride[2]) * C + c;
          for (std::size_t dt = 0; dt < window[0]; ++dt) {
            for (std::size_t dh = 0; dh < window[1]; ++dh) {
              for (std::size_t dw = 0; dw < window[2]; ++dw) {
                const std::size_t idx =
                    (((f * stride[0] + dt) * H + (h * stride[1] + dh)) * W + (w * stride[2] + dw)) *
                        C + c;
                if (in[idx] > in[best]) best = idx;
              }
            }
          }
          r.argmax[o] = best;
          r.output[o] = in[best];
        }
      }
    }
  }
  return r;
}

Tensor maxpool3d_backward(const Tensor& d_output, const PoolResult& pool) {
  require(d_output.size() == pool.argmax.size(), "pool gradient shape mismatch");
  Tensor d_input(pool.input_shape);
  for (std::size_t o = 0; o < pool.argmax.size(); ++o) d_input[pool.argmax[o]] += d_output[o];
  return d_input;
}

}  // namespace signrec::nn
