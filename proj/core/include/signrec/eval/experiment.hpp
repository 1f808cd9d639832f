// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_EVAL_EXPERIMENT_HPP_
#define SIGNREC_EVAL_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "signrec/dataset.hpp"
#include "signrec/eval/evaluate.hpp"
#include "signrec/models/examples.hpp"
#include "signrec/models/trainer.hpp"

namespace signrec::eval {

struct ExperimentResult {
  std::string experiment;  // "cross-subject", "adaptation", "single-split"
  std::string model;
  std::vector<std::pair<std::string, double>> hyperparams;
  std::vector<std::string> vocabulary;
  std::vector<EvalReport> folds;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population
  std::uint64_t seed = 0;

  /// Recomputes mean and std from the folds (each fold weighted equally).
  void aggregate();
  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

/// Called once per finished fold, serialized across worker threads.
using FoldObserver = std::function<void(const EvalReport& report,
                                        const models::TrainedModel& model,
                                        const std::vector<models::Example>& test)>;

struct ExperimentOptions {
  models::ModelSpec spec;
  models::Hyperparams hp;
  std::size_t jobs = 1;
  /// If set, completed folds are written here when a later fold fails.
  std::filesystem::path partial_dir;
  FoldObserver on_fold;
  std::function<void(const std::string&)> log;
};

std::vector<std::pair<std::string, double>> hyperparam_list(const models::Hyperparams& hp,
                                                            double learning_rate);

/// Leave-one-subject-out: one fresh model per subject.
ExperimentResult cross_subject_experiment(const Dataset& d, const ExperimentOptions& options);

/// Per fraction, retrains with that share of the subject's pool in train and
/// scores the fixed held-out half.
ExperimentResult adaptation_curve(const Dataset& d, const std::string& subject,
                                  const std::vector<double>& fractions,
                                  const ExperimentOptions& options);

/// Scores an already trained scorer on the whole dataset.
ExperimentResult single_split(const Dataset& d, const models::Scorer& scorer,
                              const models::InputNeeds& needs, std::size_t frames,
                              std::string model_name);

}  // namespace signrec::eval

#endif  // SIGNREC_EVAL_EXPERIMENT_HPP_
