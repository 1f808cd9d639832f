// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/hand_volume.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "signrec/error.hpp"

namespace signrec {
namespace {

constexpr std::array<char, 8> kMagic = {'H', 'P', 'V', '1', 0, 0, 0, 0};
constexpr std::size_t kHeaderBytes = 8 + 5 * 4;

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

void put_u32(std::vector<char>& out, std::uint32_t v) {
  const std::size_t at = out.size();
  out.resize(at + 4);
  std::memcpy(out.data() + at, &v, 4);
}

std::uint32_t get_u32(const char* p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}

}  // namespace

HandVolume::HandVolume(std::size_t frames, std::size_t height,
                       std::size_t width, std::size_t channels)
    : data_(Shape{frames, height, width, channels}) {}

HandVolume::HandVolume(Tensor data) : data_(std::move(data)) {
  require(data_.rank() == 4, "hand volume must be rank 4, got " +
                                 shape_string(data_.shape()));
}

void HandVolume::normalize_storage() {
  for (double& v : data_.storage()) {
    const double clamped = std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0);
    v = static_cast<double>(static_cast<float>(clamped));
  }
}

std::vector<char> encode_hpv(const HandVolumePair& volumes) {
  const Shape& shape = volumes.left.tensor().shape();
  require(shape.size() == 4 && shape == volumes.right.tensor().shape(),
          "left and right hand volumes must share a rank-4 shape");
  std::vector<char> out(kMagic.begin(), kMagic.end());
  put_u32(out, 2);
  for (std::size_t d : shape) put_u32(out, static_cast<std::uint32_t>(d));
  out.reserve(out.size() + 2 * volumes.left.tensor().size() * 4);
  for (const HandVolume* vol : {&volumes.left, &volumes.right}) {
    for (double v : vol->tensor().data()) {
      const float f = static_cast<float>(v);
      char buf[4];
      std::memcpy(buf, &f, 4);
      out.insert(out.end(), buf, buf + 4);
    }
  }
  return out;
}

HandVolumePair decode_hpv(const std::vector<char>& bytes,
                          const std::string& origin) {
  if (bytes.size() < kHeaderBytes ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    fail(ErrorCode::kFormat, origin + ": not an HPV1 file");
  }
  const char* p = bytes.data() + 8;
  const std::uint32_t hands = get_u32(p);
  if (hands != 2) fail(ErrorCode::kFormat, origin + ": expected 2 hands");
  Shape shape(4);
  for (std::size_t i = 0; i < 4; ++i) shape[i] = get_u32(p + 4 * (i + 1));
  const std::size_t per_hand = shape_size(shape);
  if (bytes.size() != kHeaderBytes + 2 * per_hand * 4) {
    fail(ErrorCode::kFormat, origin + ": payload size does not match header " +
                                 shape_string(shape));
  }
  const char* payload = bytes.data() + kHeaderBytes;
  HandVolumePair out;
  for (std::size_t hand = 0; hand < 2; ++hand) {
    std::vector<double> values(per_hand);
    for (std::size_t i = 0; i < per_hand; ++i) {
      float f;
      std::memcpy(&f, payload + 4 * (hand * per_hand + i), 4);
      if (!std::isfinite(f) || f < 0.0f || f > 1.0f) {
        fail(ErrorCode::kFormat, origin + ": voxel value outside [0,1]");
      }
      values[i] = f;
    }
    (hand == 0 ? out.left : out.right) = HandVolume(Tensor(shape, std::move(values)));
  }
  return out;
}

void write_hpv(const std::filesystem::path& path, const HandVolumePair& volumes) {
  const std::vector<char> bytes = encode_hpv(volumes);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorCode::kIo, "cannot open for writing: " + path.string());
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) fail(ErrorCode::kIo, "write failed: " + path.string());
}

HandVolumePair read_hpv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::kIo, "cannot open: " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(is)),
                          std::istreambuf_iterator<char>());
  return decode_hpv(bytes, path.string());
}

}  // namespace signrec
