// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_TESTS_TEST_UTIL_HPP_
#define SIGNREC_TESTS_TEST_UTIL_HPP_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <string>

#include "signrec/dataset.hpp"
#include "signrec/preprocess.hpp"
#include "signrec/synth.hpp"

namespace signrec::testing {

class TempDir {
 public:
  TempDir() {
    std::string templ = (std::filesystem::temp_directory_path() / "signrec-XXXXXX").string();
    path_ = ::mkdtemp(templ.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Relative path -> contents for every regular file under root.
inline std::map<std::string, std::string> tree_contents(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[std::filesystem::relative(e.path(), root).string()] = slurp(e.path());
    }
  }
  return out;
}

inline SynthConfig small_synth(std::size_t classes = 3, std::size_t subjects = 2,
                               std::size_t per = 2, bool hands = false) {
  SynthConfig c;
  c.num_classes = classes;
  c.num_subjects = subjects;
  c.samples_per_class_per_subject = per;
  c.frame_length_range = {24, 40};
  c.with_hands = hands;
  c.hand_frames = 6;
  c.patch = 40;
  c.patch_out = 10;
  c.rng_seed = 5;
  return c;
}

inline SkelTensor random_skel(std::size_t T, std::size_t J, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SkelTensor x(T, J);
  for (double& v : x.tensor().data()) v = u(rng);
  return x;
}

inline SkeletonFrame still_frame(double t) {
  SkeletonFrame f;
  f.timestamp = t;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    f.joints3d[j] = {0.01 * static_cast<double>(j), 0.3, 2.0};
  }
  return f;
}

}  // namespace signrec::testing

#endif  // SIGNREC_TESTS_TEST_UTIL_HPP_
