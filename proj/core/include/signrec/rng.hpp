// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_RNG_HPP_
#define SIGNREC_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace signrec {

using Rng = std::mt19937_64;

/// Derives an independent seed for a named sub-stream ("init", "shuffle",
/// "dropout", ...) so components can be varied without perturbing others.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

inline Rng make_rng(std::uint64_t seed, std::string_view stream) {
  return Rng(derive_seed(seed, stream));
}

/// Uniform double in [0, 1) from a 64-bit hash; used for stateless noise.
double hash_unit(std::uint64_t key);
std::uint64_t mix64(std::uint64_t x);

}  // namespace signrec

#endif  // SIGNREC_RNG_HPP_
