// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/eval/embeddings.hpp"

#include <cstdio>
#include <sstream>

#include "signrec/error.hpp"
#include "signrec/models/features.hpp"

namespace signrec::eval {
namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::string column_name(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%03zu", prefix, i);
  return buf;
}

}  // namespace

nn::Matrix export_embeddings(const models::AiLstmModel& model,
                             const std::vector<models::Example>& examples) {
  const auto dim = static_cast<Eigen::Index>(3 * model.spec().state_size);
  nn::Matrix out(dim, static_cast<Eigen::Index>(examples.size()));
  for (std::size_t i = 0; i < examples.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = model.embed({&examples[i]});
  }
  return out;
}

std::string embeddings_csv(const nn::Matrix& embeddings,
                           const std::vector<models::Example>& examples) {
  require(embeddings.cols() == static_cast<Eigen::Index>(examples.size()),
          "embedding count does not match example count");
  std::string out = "subject,label";
  for (Eigen::Index i = 0; i < embeddings.rows(); ++i) {
    out += ',' + column_name('e', static_cast<std::size_t>(i));
  }
  out += '\n';
  for (std::size_t n = 0; n < examples.size(); ++n) {
    out += examples[n].subject + ',' + std::to_string(examples[n].label);
    for (Eigen::Index i = 0; i < embeddings.rows(); ++i) {
      out += ',';
      append_number(out, embeddings(i, static_cast<Eigen::Index>(n)));
    }
    out += '\n';
  }
  return out;
}

std::vector<FeatureRow> dataset_features(const Dataset& d, std::vector<std::string>* warnings) {
  std::vector<FeatureRow> rows;
  rows.reserve(d.samples.size());
  for (const SamplePtr& s : d.samples) {
    if (s->frames.size() < 2) {
      if (warnings) {
        warnings->push_back("skipping " + s->subject_id + "/" + std::to_string(s->class_label) +
                            "/" + s->stem + ": fewer than 2 frames");
      }
      continue;
    }
    rows.push_back({s->subject_id, s->class_label, models::extract_features126(select_joints(*s))});
  }
  return rows;
}

std::string features_csv(const std::vector<FeatureRow>& rows) {
  std::string out = "subject,label";
  for (std::size_t i = 0; i < models::kFeatureCount; ++i) out += ',' + column_name('f', i);
  out += '\n';
  for (const FeatureRow& r : rows) {
    require(r.features.size() == static_cast<Eigen::Index>(models::kFeatureCount),
            "feature row has the wrong length");
    out += r.subject + ',' + std::to_string(r.label);
    for (Eigen::Index i = 0; i < r.features.size(); ++i) {
      out += ',';
      append_number(out, r.features[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<FeatureRow> parse_features_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) fail(ErrorCode::kFormat, "feature CSV is empty");
  std::vector<FeatureRow> rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 2 + models::kFeatureCount) {
      fail(ErrorCode::kFormat, "feature CSV row has " + std::to_string(cells.size()) + " columns");
    }
    FeatureRow r;
    r.subject = cells[0];
    r.label = std::stoi(cells[1]);
    r.features.resize(static_cast<Eigen::Index>(models::kFeatureCount));
    for (std::size_t i = 0; i < models::kFeatureCount; ++i) {
      r.features[static_cast<Eigen::Index>(i)] = std::strtod(cells[2 + i].c_str(), nullptr);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace signrec::eval
