// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_HAND_VOLUME_HPP_
#define SIGNREC_HAND_VOLUME_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "signrec/tensor.hpp"

namespace signrec {

/// Stack of F hand-patch frames, F x H x W x C, values in [0, 1].
class HandVolume {
 public:
  HandVolume() = default;
  HandVolume(std::size_t frames, std::size_t height, std::size_t width,
             std::size_t channels);
  explicit HandVolume(Tensor data);

  std::size_t frames() const { return data_.dim(0); }
  std::size_t height() const { return data_.dim(1); }
  std::size_t width() const { return data_.dim(2); }
  std::size_t channels() const { return data_.dim(3); }

  double& operator()(std::size_t f, std::size_t h, std::size_t w, std::size_t c) {
    return data_(f, h, w, c);
  }
  double operator()(std::size_t f, std::size_t h, std::size_t w,
                    std::size_t c) const {
    return data_(f, h, w, c);
  }

  const Tensor& tensor() const { return data_; }
  Tensor& tensor() { return data_; }

  /// Clamps to [0, 1] and rounds to float32, the on-disk precision.
  void normalize_storage();

  friend bool operator==(const HandVolume&, const HandVolume&) = default;

 private:
  Tensor data_;
};

struct HandVolumePair {
  HandVolume left;
  HandVolume right;

  friend bool operator==(const HandVolumePair&, const HandVolumePair&) = default;
};

// .hpv layout: 8-byte magic "HPV1\0\0\0\0", five little-endian u32
// (hands=2, F, H, W, C), then hands*F*H*W*C little-endian float32, left first.
std::vector<char> encode_hpv(const HandVolumePair& volumes);
HandVolumePair decode_hpv(const std::vector<char>& bytes,
                          const std::string& origin = "<memory>");
void write_hpv(const std::filesystem::path& path, const HandVolumePair& volumes);
HandVolumePair read_hpv(const std::filesystem::path& path);

}  // namespace signrec

#endif  // SIGNREC_HAND_VOLUME_HPP_
