// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "signrec/error.hpp"

namespace signrec {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kSkelSuffix = ".skel.json";

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (directories ? entry.is_directory() : entry.is_regular_file()) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SkeletonFrame frame_from_json(const json& jf) {
  SkeletonFrame frame;
  frame.timestamp = jf.at("t").get<double>();
  const json& j3 = jf.at("joints3d");
  if (!j3.is_array() || j3.size() != kJointCount) {
    throw std::runtime_error("joints3d must have 25 entries");
  }
  for (std::size_t j = 0; j < kJointCount; ++j) {
    const json& p = j3[j];
    if (!p.is_array() || p.size() != 3) throw std::runtime_error("joints3d entry must have 3 numbers");
    for (std::size_t a = 0; a < 3; ++a) frame.joints3d[j][a] = p[a].get<double>();
  }
  if (auto it = jf.find("joints2d"); it != jf.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != kJointCount) {
      throw std::runtime_error("joints2d must have 25 entries");
    }
    std::array<Point2, kJointCount> uv{};
    for (std::size_t j = 0; j < kJointCount; ++j) {
      const json& p = (*it)[j];
      if (!p.is_array() || p.size() != 2) throw std::runtime_error("joints2d entry must have 2 numbers");
      uv[j] = {p[0].get<double>(), p[1].get<double>()};
    }
    frame.joints2d = uv;
  }
  return frame;
}

json frame_to_json(const SkeletonFrame& frame) {
  json jf = json::object();
  jf["t"] = frame.timestamp;
  json j3 = json::array();
  for (const Point3& p : frame.joints3d) j3.push_back({p[0], p[1], p[2]});
  jf["joints3d"] = std::move(j3);
  if (frame.joints2d) {
    json j2 = json::array();
    for (const Point2& p : *frame.joints2d) j2.push_back({p[0], p[1]});
    jf["joints2d"] = std::move(j2);
  }
  return jf;
}

}  // namespace

bool Dataset::has_hand_volumes() const {
  return !samples.empty() &&
         std::all_of(samples.begin(), samples.end(),
                     [](const SamplePtr& s) { return s->hand_volumes.has_value(); });
}

std::string check_sample(const SignSample& sample, std::size_t num_classes) {
  if (sample.frames.empty()) return "sample has no frames";
  if (sample.class_label < 0 ||
      static_cast<std::size_t>(sample.class_label) >= num_classes) {
    return "class label " + std::to_string(sample.class_label) + " out of range";
  }
  double prev_t = -INFINITY;
  for (const SkeletonFrame& f : sample.frames) {
    if (!std::isfinite(f.timestamp)) return "non-finite timestamp";
    if (f.timestamp < prev_t) return "timestamps are not time-ordered";
    prev_t = f.timestamp;
    for (const Point3& p : f.joints3d) {
      for (double v : p) {
        if (!std::isfinite(v)) return "non-finite joint coordinate";
      }
    }
    if (f.joints2d) {
      for (const Point2& p : *f.joints2d) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
          return "non-finite 2D joint coordinate";
        }
      }
    }
  }
  if (sample.hand_volumes &&
      sample.hand_volumes->left.tensor().shape() !=
          sample.hand_volumes->right.tensor().shape()) {
    return "left/right hand volumes differ in shape";
  }
  return {};
}

void Dataset::validate() const {
  const std::set<std::string> subject_set(subjects.begin(), subjects.end());
  require(subject_set.size() == subjects.size(), "duplicate subject ids");
  std::set<SampleKey> seen;
  for (const SamplePtr& s : samples) {
    require(s != nullptr, "null sample");
    require(subject_set.count(s->subject_id) == 1,
            "sample references unknown subject '" + s->subject_id + "'");
    const std::string why = check_sample(*s, num_classes());
    require(why.empty(), "invalid sample " + s->subject_id + "/" + s->stem + ": " + why);
    require(seen.insert(s->key()).second,
            "duplicate sample identity " + s->subject_id + "/" + s->stem);
  }
}

bool same_contents(const Dataset& a, const Dataset& b) {
  if (a.vocabulary != b.vocabulary || a.subjects != b.subjects ||
      a.samples.size() != b.samples.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (!(*a.samples[i] == *b.samples[i])) return false;
  }
  return true;
}

std::string encode_skeleton_json(const SignSample& sample) {
  json doc = json::object();
  doc["fps"] = sample.fps;
  json frames = json::array();
  for (const SkeletonFrame& f : sample.frames) frames.push_back(frame_to_json(f));
  doc["frames"] = std::move(frames);
  return doc.dump() + "\n";
}

void decode_skeleton_json(const std::string& text, SignSample& sample) {
  const json doc = json::parse(text);
  sample.fps = doc.at("fps").get<double>();
  sample.frames.clear();
  for (const json& jf : doc.at("frames")) sample.frames.push_back(frame_from_json(jf));
}

std::vector<SkeletonFrame> read_frame_stream(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
  const json& frames = doc.is_array() ? doc : doc.at("frames");
  std::vector<SkeletonFrame> out;
  try {
    for (const json& jf : frames) out.push_back(frame_from_json(jf));
  } catch (const std::exception& e) {
    fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
  return out;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::kIo, "cannot open: " + path.string());
  return std::string((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorCode::kIo, "cannot open for writing: " + path.string());
  os << text;
  if (!os) fail(ErrorCode::kIo, "write failed: " + path.string());
}

LoadResult load_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) {
    fail(ErrorCode::kIo, "dataset root does not exist: " + root.string());
  }
  LoadResult result;
  Dataset& d = result.dataset;

  // Pass 1: subjects and vocabulary from directory names.
  std::set<std::string> vocab;
  const std::vector<fs::path> subject_dirs = sorted_entries(root, true);
  for (const fs::path& sdir : subject_dirs) {
    d.subjects.push_back(sdir.filename().string());
    for (const fs::path& cdir : sorted_entries(sdir, true)) {
      vocab.insert(cdir.filename().string());
    }
  }
  d.vocabulary.assign(vocab.begin(), vocab.end());
  std::map<std::string, int> label_of;
  for (std::size_t i = 0; i < d.vocabulary.size(); ++i) {
    label_of[d.vocabulary[i]] = static_cast<int>(i);
  }

  std::set<SampleKey> seen;
  for (const fs::path& sdir : subject_dirs) {
    const std::string subject = sdir.filename().string();
    for (const fs::path& cdir : sorted_entries(sdir, true)) {
      const int label = label_of.at(cdir.filename().string());
      for (const fs::path& file : sorted_entries(cdir, false)) {
        const std::string name = file.filename().string();
        if (!ends_with(name, kSkelSuffix)) continue;
        auto sample = std::make_shared<SignSample>();
        sample->subject_id = subject;
        sample->class_label = label;
        sample->stem = name.substr(0, name.size() - kSkelSuffix.size());
        try {
          decode_skeleton_json(read_text_file(file), *sample);
          const fs::path hpv = cdir / (sample->stem + ".hpv");
          if (fs::exists(hpv)) sample->hand_volumes = read_hpv(hpv);
        } catch (const std::exception& e) {
          result.warnings.push_back(file.string() + ": " + e.what());
          continue;
        }
        if (std::string why = check_sample(*sample, d.num_classes()); !why.empty()) {
          result.warnings.push_back(file.string() + ": " + why);
          continue;
        }
        if (!seen.insert(sample->key()).second) {
          result.warnings.push_back(file.string() + ": duplicate sample identity");
          continue;
        }
        d.samples.push_back(std::move(sample));
      }
    }
  }
  if (d.samples.empty()) {
    fail(ErrorCode::kEmptyDataset, "empty dataset: no valid samples under " + root.string());
  }
  return result;
}

void save_dataset(const Dataset& dataset, const fs::path& root) {
  dataset.validate();
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + root.string() + ": " + ec.message());
  // Every subject gets every class directory so the vocabulary survives a
  // reload even for classes a subject never performed.
  for (const std::string& subject : dataset.subjects) {
    for (const std::string& cls : dataset.vocabulary) {
      fs::create_directories(root / subject / cls, ec);
      if (ec) fail(ErrorCode::kIo, "cannot create " + (root / subject / cls).string());
    }
  }
  for (const SamplePtr& s : dataset.samples) {
    const fs::path dir = root / s->subject_id / dataset.vocabulary.at(s->class_label);
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create " + dir.string());
    write_text_file(dir / (s->stem + std::string(kSkelSuffix)), encode_skeleton_json(*s));
    if (s->hand_volumes) write_hpv(dir / (s->stem + ".hpv"), *s->hand_volumes);
  }
}

}  // namespace signrec
