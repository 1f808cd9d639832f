// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/eval/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include "signrec/error.hpp"
#include "signrec/eval/reports.hpp"
#include "signrec/models/examples.hpp"
#include "signrec/splits.hpp"

namespace signrec::eval {
namespace {

struct FoldTask {
  std::string subject;
  std::optional<double> fraction;
  Split split;
};

std::vector<models::Example> gather(const Dataset& part,
                                    const std::unordered_map<const SignSample*, std::size_t>& index,
                                    const std::vector<models::Example>& all) {
  std::vector<models::Example> out;
  out.reserve(part.samples.size());
  for (const SamplePtr& s : part.samples) out.push_back(all[index.at(s.get())]);
  return out;
}

ExperimentResult run_folds(const Dataset& d, std::vector<FoldTask> tasks,
                           const ExperimentOptions& options, std::string experiment) {
  options.hp.validate();
  const models::InputNeeds needs = models::input_needs(options.spec.kind);
  const std::vector<models::Example> all = models::make_examples(d, needs, options.spec.frames);
  std::unordered_map<const SignSample*, std::size_t> index;
  for (std::size_t i = 0; i < d.samples.size(); ++i) index.emplace(d.samples[i].get(), i);

  ExperimentResult result;
  result.experiment = std::move(experiment);
  result.model = std::string(models::model_kind_name(options.spec.kind));
  result.hyperparams =
      hyperparam_list(options.hp, options.hp.learning_rate_for(options.spec.kind));
  result.vocabulary = d.vocabulary;
  result.seed = options.hp.seed;

  std::vector<std::optional<EvalReport>> reports(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::mutex mu;
  std::atomic<std::size_t> next{0};

  auto log = [&](const std::string& msg) {
    if (options.log) {
      std::lock_guard<std::mutex> lock(mu);
      options.log(msg);
    }
  };

  auto run_one = [&](std::size_t i) {
    const FoldTask& task = tasks[i];
    for (const std::string& w : task.split.warnings) log("warning: " + w);
    if (task.split.test.samples.empty()) return;
    audit_disjoint(task.split.train, task.split.test);
    const auto train = gather(task.split.train, index, all);
    const auto test = gather(task.split.test, index, all);
    const models::TrainedModel trained =
        models::fit(options.spec, train, options.hp, d.vocabulary);
    EvalReport report = evaluate(*trained.scorer(), test, task.subject);
    report.fraction = task.fraction;
    std::lock_guard<std::mutex> lock(mu);
    if (options.on_fold) options.on_fold(report, trained, test);
    if (options.log) {
      std::string what = "fold " + task.subject;
      if (task.fraction) what += " fraction " + std::to_string(*task.fraction);
      options.log(what + ": accuracy " + std::to_string(report.accuracy) + " (n=" +
                  std::to_string(report.n) + ")");
    }
    reports[i] = std::move(report);
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        run_one(i);
      } catch (...) {
        errors[i] = std::current_exception();
        next = tasks.size();  // stop handing out new folds
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  for (auto& r : reports) {
    if (r) result.folds.push_back(std::move(*r));
  }
  if (!result.folds.empty()) result.aggregate();
  for (const std::exception_ptr& e : errors) {
    if (!e) continue;
    if (!options.partial_dir.empty() && !result.folds.empty()) {
      write_reports(result, options.partial_dir);
    }
    std::rethrow_exception(e);
  }
  if (result.folds.empty()) fail(ErrorCode::kEmptyDataset, "no fold produced a report");
  return result;
}

}  // namespace

void ExperimentResult::aggregate() {
  require(!folds.empty(), "cannot aggregate zero folds");
  double sum = 0.0;
  for (const EvalReport& r : folds) sum += r.accuracy;
  mean_accuracy = sum / static_cast<double>(folds.size());
  double sq = 0.0;
  for (const EvalReport& r : folds) sq += (r.accuracy - mean_accuracy) * (r.accuracy - mean_accuracy);
  std_accuracy = std::sqrt(sq / static_cast<double>(folds.size()));
}

std::vector<std::pair<std::string, double>> hyperparam_list(const models::Hyperparams& hp,
                                                            double learning_rate) {
  return {{"learning_rate", learning_rate},
          {"l2_beta", hp.l2_beta},
          {"dropout_keep", hp.dropout_keep},
          {"epochs", static_cast<double>(hp.epochs)},
          {"batch_size", static_cast<double>(hp.batch_size)},
          {"adam_beta1", hp.adam.beta1},
          {"adam_beta2", hp.adam.beta2},
          {"adam_epsilon", hp.adam.epsilon},
          {"grad_clip", hp.grad_clip}};
}

ExperimentResult cross_subject_experiment(const Dataset& d, const ExperimentOptions& options) {
  if (d.subjects.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "cross-subject evaluation needs at least 2 subjects");
  }
  std::vector<FoldTask> tasks;
  for (const std::string& s : d.subjects) tasks.push_back({s, std::nullopt, split_cross_subject(d, s)});
  return run_folds(d, std::move(tasks), options, "cross-subject");
}

ExperimentResult adaptation_curve(const Dataset& d, const std::string& subject,
                                  const std::vector<double>& fractions,
                                  const ExperimentOptions& options) {
  require(!fractions.empty(), "adaptation needs at least one fraction");
  require(std::is_sorted(fractions.begin(), fractions.end()),
          "adaptation fractions must be sorted");
  std::vector<FoldTask> tasks;
  for (double f : fractions) {
    tasks.push_back({subject, f, split_adaptation(d, subject, f, options.hp.seed)});
  }
  return run_folds(d, std::move(tasks), options, "adaptation");
}

ExperimentResult single_split(const Dataset& d, const models::Scorer& scorer,
                              const models::InputNeeds& needs, std::size_t frames,
                              std::string model_name) {
  const auto test = models::make_examples(d, needs, frames);
  ExperimentResult result;
  result.experiment = "single-split";
  result.model = std::move(model_name);
  result.vocabulary = d.vocabulary;
  result.folds.push_back(evaluate(scorer, test, "all"));
  result.aggregate();
  return result;
}

}  // namespace signrec::eval
