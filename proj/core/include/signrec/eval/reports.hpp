// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_EVAL_REPORTS_HPP_
#define SIGNREC_EVAL_REPORTS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "signrec/eval/experiment.hpp"

namespace signrec::eval {

/// File name of a fold's confusion matrix inside the report directory.
std::string confusion_file_name(const EvalReport& report);

std::string metrics_json(const ExperimentResult& result);
std::string confusion_csv(const EvalReport& report, const std::vector<std::string>& vocabulary);

/// Writes metrics.json and one confusion CSV per fold.
void write_reports(const ExperimentResult& result, const std::filesystem::path& dir);
ExperimentResult read_reports(const std::filesystem::path& dir);

/// Report whose counts are `confusion`; accuracy and per-class rates derived.
EvalReport report_from_confusion(std::string subject, const Confusion& confusion);
Confusion parse_confusion_csv(const std::string& text, std::vector<std::string>* header = nullptr);

}  // namespace signrec::eval

#endif  // SIGNREC_EVAL_REPORTS_HPP_
