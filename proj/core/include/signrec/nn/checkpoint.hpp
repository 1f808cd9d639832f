// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_NN_CHECKPOINT_HPP_
#define SIGNREC_NN_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "signrec/nn/parameters.hpp"
#include "signrec/tensor.hpp"

namespace signrec::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  Shape shape;
  std::vector<double> data;  // row-major

  friend bool operator==(const NamedTensor&, const NamedTensor&) = default;
};

/// Binary layout (little-endian):
///   "SGNM" | u32 version | str arch
///   | u32 n, n x (str key, f64 value)            hyperparameters
///   | u32 n, n x (str key, str value)            architecture config
///   | u32 n, n x str                             class vocabulary
///   | u32 n, n x (str name, u32 rank, rank x u64 dim, f64 data...)
/// where str = u32 byte length + bytes.
struct Checkpoint {
  std::string arch;
  std::vector<std::pair<std::string, double>> hyperparams;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> vocabulary;
  std::vector<NamedTensor> tensors;

  const std::string* config_value(const std::string& key) const;
  double hyperparam(const std::string& key, double fallback) const;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::vector<char> encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(const std::vector<char>& bytes, const std::string& origin = "<memory>");
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Serializes every parameter value in `params` order.
std::vector<NamedTensor> export_params(const ParamList& params);
/// Copies tensors into parameters by name; every parameter must be present
/// with a matching shape.
void import_params(const ParamList& params, const std::vector<NamedTensor>& tensors);

}  // namespace signrec::nn

#endif  // SIGNREC_NN_CHECKPOINT_HPP_
