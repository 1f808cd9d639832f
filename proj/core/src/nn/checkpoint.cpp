// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include "signrec/error.hpp"

namespace signrec::nn {
namespace {

constexpr char kMagic[4] = {'S', 'G', 'N', 'M'};

class Writer {
 public:
  template <typename T>
  void pod(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.insert(out_.end(), buf, buf + sizeof(T));
  }
  void str(const std::string& s) {
    pod<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void raw(const char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }
  std::vector<char> take() { return std::move(out_); }

 private:
  std::vector<char> out_;
};

class Reader {
 public:
  Reader(const std::vector<char>& bytes, std::string origin)
      : bytes_(bytes), origin_(std::move(origin)) {}

  template <typename T>
  T pod() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string str() {
    const auto n = pod<std::uint32_t>();
    need(n);
    std::string s(bytes_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  void expect_magic() {
    need(4);
    if (std::memcmp(bytes_.data(), kMagic, 4) != 0) {
      fail(ErrorCode::kFormat, origin_ + ": not a signrec checkpoint");
    }
    pos_ = 4;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) fail(ErrorCode::kFormat, origin_ + ": truncated checkpoint");
  }
  const std::vector<char>& bytes_;
  std::string origin_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::string* Checkpoint::config_value(const std::string& key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return &v;
  }
  return nullptr;
}

double Checkpoint::hyperparam(const std::string& key, double fallback) const {
  for (const auto& [k, v] : hyperparams) {
    if (k == key) return v;
  }
  return fallback;
}

std::vector<char> encode_checkpoint(const Checkpoint& ckpt) {
  Writer w;
  w.raw(kMagic, 4);
  w.pod<std::uint32_t>(kCheckpointVersion);
  w.str(ckpt.arch);
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(ckpt.hyperparams.size()));
  for (const auto& [k, v] : ckpt.hyperparams) {
    w.str(k);
    w.pod<double>(v);
  }
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(ckpt.config.size()));
  for (const auto& [k, v] : ckpt.config) {
    w.str(k);
    w.str(v);
  }
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(ckpt.vocabulary.size()));
  for (const std::string& name : ckpt.vocabulary) w.str(name);
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(ckpt.tensors.size()));
  for (const NamedTensor& t : ckpt.tensors) {
    require(shape_size(t.shape) == t.data.size(), "tensor '" + t.name + "' shape/data mismatch");
    w.str(t.name);
    w.pod<std::uint32_t>(static_cast<std::uint32_t>(t.shape.size()));
    for (std::size_t d : t.shape) w.pod<std::uint64_t>(d);
    w.raw(reinterpret_cast<const char*>(t.data.data()), t.data.size() * sizeof(double));
  }
  return w.take();
}

Checkpoint decode_checkpoint(const std::vector<char>& bytes, const std::string& origin) {
  Reader r(bytes, origin);
  r.expect_magic();
  const auto version = r.pod<std::uint32_t>();
  if (version != kCheckpointVersion) {
    fail(ErrorCode::kFormat, origin + ": unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ckpt;
  ckpt.arch = r.str();
  for (auto n = r.pod<std::uint32_t>(); n > 0; --n) {
    std::string k = r.str();
    ckpt.hyperparams.emplace_back(std::move(k), r.pod<double>());
  }
  for (auto n = r.pod<std::uint32_t>(); n > 0; --n) {
    std::string k = r.str();
    ckpt.config.emplace_back(std::move(k), r.str());
  }
  for (auto n = r.pod<std::uint32_t>(); n > 0; --n) ckpt.vocabulary.push_back(r.str());
  for (auto n = r.pod<std::uint32_t>(); n > 0; --n) {
    NamedTensor t;
    t.name = r.str();
    const auto rank = r.pod<std::uint32_t>();
    for (std::uint32_t i = 0; i < rank; ++i) t.shape.push_back(r.pod<std::uint64_t>());
    t.data.resize(shape_size(t.shape));
    for (double& v : t.data) v = r.pod<double>();
    ckpt.tensors.push_back(std::move(t));
  }
  if (!r.done()) fail(ErrorCode::kFormat, origin + ": trailing bytes after checkpoint");
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const std::vector<char> bytes = encode_checkpoint(ckpt);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorCode::kIo, "cannot open for writing: " + path.string());
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) fail(ErrorCode::kIo, "write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::kIo, "cannot open checkpoint: " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes, path.string());
}

std::vector<NamedTensor> export_params(const ParamList& params) {
  std::vector<NamedTensor> out;
  out.reserve(params.size());
  for (const ParamRef& p : params) {
    const Matrix& m = p.param->value;
    NamedTensor t{p.name, {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())}, {}};
    t.data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) t.data.push_back(m(i, j));
    }
    out.push_back(std::move(t));
  }
  return out;
}

void import_params(const ParamList& params, const std::vector<NamedTensor>& tensors) {
  std::map<std::string, const NamedTensor*> by_name;
  for (const NamedTensor& t : tensors) by_name[t.name] = &t;
  for (const ParamRef& p : params) {
    auto it = by_name.find(p.name);
    if (it == by_name.end()) {
      fail(ErrorCode::kMismatch, "checkpoint is missing parameter '" + p.name + "'");
    }
    const NamedTensor& t = *it->second;
    Matrix& m = p.param->value;
    if (t.shape.size() != 2 || t.shape[0] != static_cast<std::size_t>(m.rows()) ||
        t.shape[1] != static_cast<std::size_t>(m.cols())) {
      fail(ErrorCode::kMismatch, "parameter '" + p.name + "' has shape " +
                                     shape_string(t.shape) + " in checkpoint");
    }
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = t.data[k++];
    }
  }
}

}  // namespace signrec::nn
