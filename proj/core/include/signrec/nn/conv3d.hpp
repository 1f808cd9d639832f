// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_CONV3D_HPP_
#define SIGNREC_NN_CONV3D_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "signrec/nn/parameters.hpp"
#include "signrec/tensor.hpp"

namespace signrec::nn {

using Extent3 = std::array<std::size_t, 3>;  // (frames, height, width)

/// Stride-1, valid-padding 3D convolution over F x H x W x Cin volumes.
/// Kernel k is row k of `weight`, laid out as kt x kh x kw x Cin.
struct Conv3dLayer {
  Extent3 kernel{3, 3, 3};
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  Param weight;  // K x (kt*kh*kw*Cin)
  Param bias;    // K x 1

  Conv3dLayer() = default;
  Conv3dLayer(Extent3 kernel, std::size_t in_channels, std::size_t out_channels);

  std::size_t patch_size() const { return kernel[0] * kernel[1] * kernel[2] * in_channels; }
  void initialize(Rng& rng);  // He-normal weights, zero bias
  void append_to(ParamList& out, const std::string& prefix);
};

Shape conv3d_output_shape(const Shape& input, const Extent3& kernel, std::size_t out_channels);
Shape pool3d_output_shape(const Shape& input, const Extent3& window, const Extent3& stride);

/// im2col buffer of the last forward pass; one column per output voxel.
struct Conv3dCache {
  Shape input_shape;
  Matrix columns;  // patch_size x P

  bool empty() const { return input_shape.empty(); }
};

Tensor conv3d_forward(const Tensor& volume, const Conv3dLayer& layer,
                      Conv3dCache* cache = nullptr);
/// Accumulates weight/bias gradients. Returns dL/dinput when requested, else
/// an empty tensor.
Tensor conv3d_backward(const Tensor& d_output, const Conv3dCache& cache, Conv3dLayer& layer,
                       bool input_grad = true);

struct PoolResult {
  Tensor output;
  std::vector<std::size_t> argmax;  // flat input index per output element
  Shape input_shape;
};

/// Per-channel max over windows; remainders that do not fill a window are
/// dropped. Ties resolve to the first element in (t, h, w) scan order.
PoolResult maxpool3d(const Tensor& volume, const Extent3& window = {2, 2, 2},
                     const Extent3& stride = {2, 2, 2});
Tensor maxpool3d_backward(const Tensor& d_output, const PoolResult& pool);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_CONV3D_HPP_
