// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/eval/reports.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "signrec/error.hpp"

namespace signrec::eval {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string confusion_file_name(const EvalReport& report) {
  std::string name = "confusion_" + report.subject;
  if (report.fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_f%.4g", *report.fraction);
    name += buf;
  }
  return name + ".csv";
}

std::string metrics_json(const ExperimentResult& result) {
  Json j;
  j["experiment"] = result.experiment;
  j["model"] = result.model;
  Json hp = Json::object();
  for (const auto& [k, v] : result.hyperparams) hp[k] = v;
  j["hyperparams"] = hp;
  Json folds = Json::array();
  for (const EvalReport& r : result.folds) {
    Json f;
    f["subject"] = r.subject;
    if (r.fraction) f["fraction"] = *r.fraction;
    f["accuracy"] = r.accuracy;
    f["n"] = r.n;
    f["confusion"] = confusion_file_name(r);
    folds.push_back(f);
  }
  j["folds"] = folds;
  j["mean_accuracy"] = result.mean_accuracy;
  j["std_accuracy"] = result.std_accuracy;
  j["seed"] = result.seed;
  j["vocabulary"] = result.vocabulary;
  return j.dump(2) + "\n";
}

std::string confusion_csv(const EvalReport& report, const std::vector<std::string>& vocabulary) {
  require(report.confusion.size() == vocabulary.size(),
          "confusion matrix size does not match the vocabulary");
  std::string out;
  for (std::size_t c = 0; c < vocabulary.size(); ++c) {
    if (c) out += ',';
    out += vocabulary[c];
  }
  out += '\n';
  for (const auto& row : report.confusion) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += std::to_string(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_reports(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create report directory " + dir.string() + ": " + ec.message());
  write_text_file(dir / "metrics.json", metrics_json(result));
  for (const EvalReport& r : result.folds) {
    write_text_file(dir / confusion_file_name(r), confusion_csv(r, result.vocabulary));
  }
}

EvalReport report_from_confusion(std::string subject, const Confusion& confusion) {
  std::vector<int> truth, predicted;
  for (std::size_t t = 0; t < confusion.size(); ++t) {
    require(confusion[t].size() == confusion.size(), "confusion matrix must be square",
            ErrorCode::kFormat);
    for (std::size_t p = 0; p < confusion.size(); ++p) {
      truth.insert(truth.end(), confusion[t][p], static_cast<int>(t));
      predicted.insert(predicted.end(), confusion[t][p], static_cast<int>(p));
    }
  }
  return make_report(truth, predicted, confusion.size(), std::move(subject));
}

Confusion parse_confusion_csv(const std::string& text, std::vector<std::string>* header) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) fail(ErrorCode::kFormat, "confusion CSV is empty");
  const std::vector<std::string> names = split_csv_line(line);
  if (header) *header = names;
  Confusion out;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != names.size()) fail(ErrorCode::kFormat, "confusion CSV row has wrong width");
    std::vector<std::size_t> row;
    for (const std::string& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(static_cast<std::size_t>(std::stoull(c, &used)));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        fail(ErrorCode::kFormat, "confusion CSV cell '" + c + "' is not a count");
      }
    }
    out.push_back(std::move(row));
  }
  if (out.size() != names.size()) fail(ErrorCode::kFormat, "confusion CSV must have C rows");
  return out;
}

ExperimentResult read_reports(const std::filesystem::path& dir) {
  const std::filesystem::path metrics = dir / "metrics.json";
  Json j;
  try {
    j = Json::parse(read_text_file(metrics));
  } catch (const Json::exception& e) {
    fail(ErrorCode::kFormat, metrics.string() + ": " + e.what());
  }
  try {
    ExperimentResult r;
    r.experiment = j.at("experiment").get<std::string>();
    r.model = j.at("model").get<std::string>();
    for (const auto& [k, v] : j.at("hyperparams").items()) r.hyperparams.emplace_back(k, v.get<double>());
    r.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const Json& f : j.at("folds")) {
      const std::string file = f.at("confusion").get<std::string>();
      std::vector<std::string> header;
      const Confusion conf = parse_confusion_csv(read_text_file(dir / file), &header);
      if (header != r.vocabulary) {
        fail(ErrorCode::kFormat, file + ": header does not match the vocabulary");
      }
      EvalReport rep = report_from_confusion(f.at("subject").get<std::string>(), conf);
      if (f.contains("fraction")) rep.fraction = f.at("fraction").get<double>();
      if (rep.n != f.at("n").get<std::size_t>() || rep.accuracy != f.at("accuracy").get<double>()) {
        fail(ErrorCode::kFormat, file + ": counts disagree with metrics.json");
      }
      r.folds.push_back(std::move(rep));
    }
    r.mean_accuracy = j.at("mean_accuracy").get<double>();
    r.std_accuracy = j.at("std_accuracy").get<double>();
    return r;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kFormat, metrics.string() + ": " + e.what());
  }
}

}  // namespace signrec::eval
