// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/rng.hpp"

namespace signrec {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : stream) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return mix64(seed ^ mix64(h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = derive_seed(seed, stream);
  h = mix64(h ^ mix64(a + 1));
  h = mix64(h ^ mix64(b + 0x1234567ULL));
  h = mix64(h ^ mix64(c + 0x89abcdefULL));
  return h;
}

double hash_unit(std::uint64_t key) {
  return static_cast<double>(mix64(key) >> 11) * 0x1.0p-53;
}

}  // namespace signrec
