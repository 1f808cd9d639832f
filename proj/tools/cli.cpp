// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "signrec/dataset.hpp"
#include "signrec/error.hpp"
#include "signrec/eval/embeddings.hpp"
#include "signrec/eval/experiment.hpp"
#include "signrec/eval/reports.hpp"
#include "signrec/models/ai_lstm.hpp"
#include "signrec/models/examples.hpp"
#include "signrec/models/trainer.hpp"
#include "signrec/nn/checkpoint.hpp"
#include "signrec/preprocess.hpp"
#include "signrec/synth.hpp"

namespace signrec::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Shared {
  std::string data;
  std::string out;
  std::string config;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string model = "ai-lstm";
  std::size_t epochs = 250;
  double lr = 0.0;
  std::size_t batch_size = 64;
  std::size_t state_size = 50;
  std::size_t frames = kDefaultFrames;
  std::size_t hand_frames = 15;
  std::size_t patch = 100;
  std::size_t patch_out = 32;
  double l2 = 0.008;
  double dropout_keep = 0.5;
  double grad_clip = 0.0;
  bool verbose = false;
};

struct SynthFlags {
  std::size_t classes = 10;
  std::size_t subjects = 4;
  std::size_t samples = 5;
  std::size_t min_frames = 30;
  std::size_t max_frames = 60;
  double noise = 0.004;
  std::string twin_pairs;
  std::string relation_pairs;
  double relation_offset = 0.12;
  double position_jitter = 0.0;
  double style = 0.0;
  double texture_noise = 0.03;
  bool no_hands = false;
};

struct EvalFlags {
  std::vector<std::string> checkpoints;
  std::string protocol = "single-split";
  std::string subject;
  std::string fractions = "0,0.1,0.2,0.3,0.4,0.5";
};

struct SegmentFlags {
  std::string input;
  SegmentParams params;
};

struct Context {
  Shared shared;
  SynthFlags synth;
  EvalFlags eval;
  SegmentFlags segment;
  std::map<std::string, std::vector<CLI::Option*>> options;  // shared flags, every subcommand
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  bool given(const std::string& name) const {
    auto it = options.find(name);
    if (it == options.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [](const CLI::Option* o) { return o->count() > 0; });
  }
  void log(const std::string& msg) const {
    if (shared.verbose) *err << msg << "\n";
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat `key = value` file; '#' starts a comment. Keys name long flags, with
// '_' and '-' interchangeable.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!fs::is_regular_file(path) || !in) throw UsageError("config file not found: " + path);
  std::vector<std::string> tokens;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key '" + key + "'");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      out.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw UsageError("class pair '" + item + "' is not of the form a:b");
    }
  }
  return out;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("fraction '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw UsageError("--fractions is empty");
  return out;
}

void require_flag(const std::string& value, const std::string& flag) {
  if (value.empty()) throw UsageError(flag + " is required");
}

models::ModelKind model_kind(const Context& ctx) {
  const auto kind = models::parse_model_kind(ctx.shared.model);
  if (!kind) {
    throw UsageError("unknown model '" + ctx.shared.model +
                     "' (expected ai-lstm, spatial-ai-lstm, cnn3d, max-fusion or baseline)");
  }
  return *kind;
}

models::Hyperparams hyperparams(const Context& ctx, models::Hyperparams hp) {
  const Shared& s = ctx.shared;
  if (ctx.given("epochs")) hp.epochs = s.epochs;
  if (ctx.given("lr")) hp.learning_rate = s.lr;
  if (ctx.given("batch-size")) hp.batch_size = s.batch_size;
  if (ctx.given("seed")) hp.seed = s.seed;
  if (ctx.given("l2")) hp.l2_beta = s.l2;
  if (ctx.given("dropout-keep")) hp.dropout_keep = s.dropout_keep;
  if (ctx.given("grad-clip")) hp.grad_clip = s.grad_clip;
  return hp;
}

models::Hyperparams fresh_hyperparams(const Context& ctx) {
  models::Hyperparams hp;
  hp.epochs = ctx.shared.epochs;
  hp.batch_size = ctx.shared.batch_size;
  hp.seed = ctx.shared.seed;
  hp.l2_beta = ctx.shared.l2;
  hp.dropout_keep = ctx.shared.dropout_keep;
  hp.grad_clip = ctx.shared.grad_clip;
  if (ctx.given("lr")) hp.learning_rate = ctx.shared.lr;
  return hp;
}

Dataset load(const Context& ctx) {
  require_flag(ctx.shared.data, "--data");
  LoadResult r = load_dataset(ctx.shared.data);
  for (const std::string& w : r.warnings) *ctx.err << "warning: " << w << "\n";
  return std::move(r.dataset);
}

void require_hands(const Dataset& d, models::ModelKind kind) {
  if (models::input_needs(kind).hands && !d.has_hand_volumes()) {
    fail(ErrorCode::kMissingModality,
         std::string(models::model_kind_name(kind)) +
             " needs hand volumes (hands.hpv next to each sample); regenerate the data with "
             "`signrec synth` (hands are on by default) or choose ai-lstm, spatial-ai-lstm or "
             "baseline");
  }
}

void check_vocabulary(const nn::Checkpoint& ckpt, const Dataset& d, const std::string& path) {
  if (ckpt.vocabulary != d.vocabulary) {
    fail(ErrorCode::kMismatch, "checkpoint " + path + " was trained on " +
                                   std::to_string(ckpt.vocabulary.size()) +
                                   " classes that do not match the dataset's " +
                                   std::to_string(d.vocabulary.size()));
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

Json history_json(const models::TrainingHistory& h) {
  Json arr = Json::array();
  for (const models::EpochRecord& r : h) {
    arr.push_back({{"epoch", r.epoch},
                   {"loss", r.loss},
                   {"train_accuracy", r.train_accuracy},
                   {"batches", r.batches}});
  }
  return arr;
}

int cmd_synth(const Context& ctx) {
  require_flag(ctx.shared.out, "--out");
  const SynthFlags& f = ctx.synth;
  SynthConfig c;
  c.num_classes = f.classes;
  c.num_subjects = f.subjects;
  c.samples_per_class_per_subject = f.samples;
  c.frame_length_range = {f.min_frames, f.max_frames};
  c.noise_sigma = f.noise;
  c.twin_class_pairs = parse_pairs(f.twin_pairs);
  c.relation_class_pairs = parse_pairs(f.relation_pairs);
  c.relation_offset = f.relation_offset;
  c.position_jitter = f.position_jitter;
  c.subject_variation.style = f.style;
  c.texture_noise = f.texture_noise;
  c.with_hands = !f.no_hands;
  c.hand_frames = ctx.shared.hand_frames;
  c.patch = ctx.shared.patch;
  c.patch_out = ctx.shared.patch_out;
  c.rng_seed = ctx.shared.seed;
  const Dataset d = generate_synthetic(c);
  save_dataset(d, ctx.shared.out);
  *ctx.out << "wrote " << d.samples.size() << " samples (" << d.subjects.size() << " subjects, "
           << d.num_classes() << " classes) to " << ctx.shared.out << "\n";
  return kExitOk;
}

int cmd_train(const Context& ctx) {
  require_flag(ctx.shared.out, "--out");
  const models::ModelKind kind = model_kind(ctx);
  const Dataset d = load(ctx);
  require_hands(d, kind);
  const models::Hyperparams hp = fresh_hyperparams(ctx);
  hp.validate();
  models::ModelSpec spec;
  spec.kind = kind;
  spec.state_size = ctx.shared.state_size;
  spec.frames = ctx.shared.frames;
  const auto examples = models::make_examples(d, models::input_needs(kind), spec.frames);
  const models::TrainedModel trained =
      models::fit(spec, examples, hp, d.vocabulary, [&](const models::EpochRecord& r) {
        ctx.log("epoch " + std::to_string(r.epoch) + " loss " + std::to_string(r.loss) +
                " train_acc " + std::to_string(r.train_accuracy));
      });

  const fs::path out = ctx.shared.out;
  ensure_dir(out);
  Json history;
  history["model"] = std::string(models::model_kind_name(kind));
  history["samples"] = examples.size();
  Json files = Json::array();
  for (const nn::Checkpoint& c : trained.checkpoints()) {
    const fs::path path = out / (c.arch + ".ckpt");
    nn::save_checkpoint(path, c);
    files.push_back(path.filename().string());
    *ctx.out << "wrote " << path.string() << "\n";
  }
  history["checkpoints"] = files;
  history["history"] = history_json(trained.history);
  if (trained.secondary) history["secondary_history"] = history_json(trained.secondary_history);
  write_text_file(out / "history.json", history.dump(2) + "\n");
  const models::EpochRecord last = trained.history.empty() ? models::EpochRecord{} : trained.history.back();
  *ctx.out << "trained " << models::model_kind_name(kind) << " for " << trained.history.size()
           << " epochs (" << last.batches << " batches/epoch), final loss " << last.loss << "\n";
  return kExitOk;
}

int cmd_eval(const Context& ctx) {
  require_flag(ctx.shared.out, "--out");
  if (ctx.eval.checkpoints.empty() || ctx.eval.checkpoints.size() > 2) {
    throw UsageError("--checkpoint must be given once, or twice for max-fusion");
  }
  const Dataset d = load(ctx);
  std::vector<nn::Checkpoint> ckpts;
  for (const std::string& p : ctx.eval.checkpoints) {
    ckpts.push_back(nn::load_checkpoint(p));
    check_vocabulary(ckpts.back(), d, p);
  }

  eval::ExperimentResult result;
  const std::string& protocol = ctx.eval.protocol;
  if (protocol == "single-split") {
    models::InputNeeds needs;
    std::size_t frames = kDefaultFrames;
    std::string name;
    for (const nn::Checkpoint& c : ckpts) {
      const auto kind = models::parse_model_kind(c.arch);
      if (!kind) fail(ErrorCode::kFormat, "unknown checkpoint architecture '" + c.arch + "'");
      const models::InputNeeds n = models::input_needs(*kind);
      needs.joints |= n.joints;
      needs.augmented |= n.augmented;
      needs.hands |= n.hands;
      needs.features |= n.features;
      if (const std::string* f = c.config_value("frames")) frames = std::stoul(*f);
      require_hands(d, *kind);
      name += (name.empty() ? "" : "+") + c.arch;
    }
    if (ckpts.size() == 2) name = "max-fusion(" + name + ")";
    const auto scorer = models::scorer_from_checkpoints(ckpts);
    result = eval::single_split(d, *scorer, needs, frames, name);
    const models::Hyperparams hp = models::hyperparams_from_checkpoint(ckpts[0]);
    result.hyperparams = eval::hyperparam_list(hp, *hp.learning_rate);
    result.seed = hp.seed;
  } else if (protocol == "cross-subject" || protocol == "adaptation") {
    eval::ExperimentOptions opts;
    opts.spec = models::spec_from_checkpoints(ckpts);
    if (ctx.given("state-size")) opts.spec.state_size = ctx.shared.state_size;
    if (ctx.given("frames")) opts.spec.frames = ctx.shared.frames;
    require_hands(d, opts.spec.kind);
    opts.hp = hyperparams(ctx, models::hyperparams_from_checkpoint(ckpts[0]));
    opts.jobs = ctx.shared.jobs;
    opts.partial_dir = fs::path(ctx.shared.out) / "partial";
    opts.log = [&](const std::string& m) { ctx.log(m); };
    if (protocol == "cross-subject") {
      result = eval::cross_subject_experiment(d, opts);
    } else {
      const std::string subject = ctx.eval.subject.empty() ? d.subjects.front() : ctx.eval.subject;
      result = eval::adaptation_curve(d, subject, parse_fractions(ctx.eval.fractions), opts);
    }
  } else {
    throw UsageError("unknown protocol '" + protocol +
                     "' (expected single-split, cross-subject or adaptation)");
  }
  eval::write_reports(result, ctx.shared.out);
  for (const eval::EvalReport& r : result.folds) {
    *ctx.out << r.subject;
    if (r.fraction) *ctx.out << " fraction " << *r.fraction;
    *ctx.out << ": accuracy " << r.accuracy << " (n=" << r.n << ")\n";
  }
  *ctx.out << "mean accuracy " << result.mean_accuracy << ", std " << result.std_accuracy << "\n";
  return kExitOk;
}

int cmd_segment(const Context& ctx) {
  const std::string input = !ctx.segment.input.empty() ? ctx.segment.input : ctx.shared.data;
  require_flag(input, "--input");
  std::vector<SkeletonFrame> frames;
  try {
    frames = read_frame_stream(input);
  } catch (const Error& e) {
    throw UsageError(std::string("cannot read stream: ") + e.what());
  }
  ctx.segment.params.validate();
  const auto segments = segment_stream(frames, ctx.segment.params);
  Json arr = Json::array();
  for (const Segment& s : segments) arr.push_back({{"start", s.start}, {"end", s.end}});
  const std::string text = arr.dump(2) + "\n";
  if (ctx.shared.out.empty()) {
    *ctx.out << text;
  } else {
    write_text_file(ctx.shared.out, text);
    *ctx.out << "wrote " << segments.size() << " segments to " << ctx.shared.out << "\n";
  }
  return kExitOk;
}

int cmd_features(const Context& ctx) {
  require_flag(ctx.shared.out, "--out");
  const Dataset d = load(ctx);
  std::vector<std::string> warnings;
  const auto rows = eval::dataset_features(d, &warnings);
  for (const std::string& w : warnings) *ctx.err << "warning: " << w << "\n";
  write_text_file(ctx.shared.out, eval::features_csv(rows));
  *ctx.out << "wrote " << rows.size() << " feature rows to " << ctx.shared.out << "\n";
  return kExitOk;
}

int cmd_embed(const Context& ctx) {
  require_flag(ctx.shared.out, "--out");
  if (ctx.eval.checkpoints.size() != 1) throw UsageError("--checkpoint must be given once");
  const Dataset d = load(ctx);
  const nn::Checkpoint ckpt = nn::load_checkpoint(ctx.eval.checkpoints[0]);
  check_vocabulary(ckpt, d, ctx.eval.checkpoints[0]);
  const std::unique_ptr<models::Model> model = models::model_from_checkpoint(ckpt);
  const auto* lstm = dynamic_cast<const models::AiLstmModel*>(model.get());
  if (lstm == nullptr) throw UsageError("embed needs an ai-lstm or spatial-ai-lstm checkpoint");
  const auto examples =
      models::make_examples(d, models::input_needs(lstm->kind()), lstm->spec().frames);
  const nn::Matrix emb = eval::export_embeddings(*lstm, examples);
  write_text_file(ctx.shared.out, eval::embeddings_csv(emb, examples));
  *ctx.out << "wrote " << examples.size() << " embeddings of size " << emb.rows() << " to "
           << ctx.shared.out << "\n";
  return kExitOk;
}

void add_shared(CLI::App* app, Context& ctx) {
  Shared& s = ctx.shared;
  auto add = [&](const std::string& name, CLI::Option* opt) { ctx.options[name].push_back(opt); };
  add("data", app->add_option("--data", s.data, "Dataset root directory"));
  add("out", app->add_option("--out", s.out, "Output path"));
  add("seed", app->add_option("--seed", s.seed, "Master random seed")->capture_default_str());
  app->add_option("--config", s.config, "Flat key = value file; flags override it");
  add("jobs", app->add_option("--jobs", s.jobs, "Parallel evaluation folds")
                  ->capture_default_str()
                  ->check(CLI::PositiveNumber));
  add("model", app->add_option("--model", s.model,
                               "ai-lstm | spatial-ai-lstm | cnn3d | max-fusion | baseline")
                   ->capture_default_str());
  add("epochs", app->add_option("--epochs", s.epochs, "Training epochs")->capture_default_str());
  add("lr", app->add_option("--lr", s.lr,
                            "Learning rate (default 5e-5 LSTM, 1e-5 CNN/fusion, 1e-2 baseline)"));
  add("batch-size", app->add_option("--batch-size", s.batch_size, "Mini-batch size")
                        ->capture_default_str()
                        ->check(CLI::PositiveNumber));
  add("state-size", app->add_option("--state-size", s.state_size, "LSTM state size")
                        ->capture_default_str()
                        ->check(CLI::PositiveNumber));
  add("frames", app->add_option("--frames", s.frames, "Resampled skeleton frames")
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber));
  add("hand-frames", app->add_option("--hand-frames", s.hand_frames, "Frames per hand volume")
                         ->capture_default_str()
                         ->check(CLI::PositiveNumber));
  add("patch", app->add_option("--patch", s.patch, "Hand crop side in pixels")
                   ->capture_default_str()
                   ->check(CLI::PositiveNumber));
  add("patch-out", app->add_option("--patch-out", s.patch_out, "Resized hand patch side")
                       ->capture_default_str()
                       ->check(CLI::PositiveNumber));
  add("l2", app->add_option("--l2", s.l2, "L2 coefficient")->capture_default_str());
  add("dropout-keep", app->add_option("--dropout-keep", s.dropout_keep, "Dropout keep probability")
                          ->capture_default_str());
  add("grad-clip", app->add_option("--grad-clip", s.grad_clip, "Gradient-norm clip, 0 = off")
                       ->capture_default_str());
  add("verbose", app->add_flag("-v,--verbose", s.verbose, "Progress messages on stderr"));
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingModality: return kExitMissingModality;
    case ErrorCode::kMismatch: return kExitMismatch;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIo:
    case ErrorCode::kFormat:
    case ErrorCode::kEmptyDataset:
    case ErrorCode::kUsage: return kExitUsage;
    case ErrorCode::kNumerical:
    case ErrorCode::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;

  CLI::App app{"signrec: skeletal and hand-shape sign recognition"};
  app.name("signrec");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::map<std::string, std::function<int(const Context&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help,
                 std::function<int(const Context&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_shared(s, ctx);
    handlers[name] = std::move(fn);
    return s;
  };

  CLI::App* synth = sub("synth", "Generate a synthetic dataset", cmd_synth);
  SynthFlags& sf = ctx.synth;
  synth->add_option("--classes", sf.classes, "Number of classes")->capture_default_str();
  synth->add_option("--subjects", sf.subjects, "Number of subjects")->capture_default_str();
  synth->add_option("--samples", sf.samples, "Samples per class per subject")->capture_default_str();
  synth->add_option("--min-frames", sf.min_frames, "Shortest take")->capture_default_str();
  synth->add_option("--max-frames", sf.max_frames, "Longest take")->capture_default_str();
  synth->add_option("--noise", sf.noise, "Joint noise sigma (m)")->capture_default_str();
  synth->add_option("--twin-pairs", sf.twin_pairs, "Same-motion class pairs, e.g. 0:1,2:3");
  synth->add_option("--relation-pairs", sf.relation_pairs, "Right-arm-offset class pairs");
  synth->add_option("--relation-offset", sf.relation_offset, "Relation offset (m)")
      ->capture_default_str();
  synth->add_option("--position-jitter", sf.position_jitter, "Per-sample body shift (m)")
      ->capture_default_str();
  synth->add_option("--style", sf.style, "Per-signer rendition change of each sign")
      ->capture_default_str();
  synth->add_option("--texture-noise", sf.texture_noise, "Hand texture noise")
      ->capture_default_str();
  synth->add_flag("--no-hands", sf.no_hands, "Skip hand volumes");

  sub("train", "Train a model and write checkpoint(s) and history.json", cmd_train);

  CLI::App* ev = sub("eval", "Evaluate checkpoint(s) and write metrics.json + confusion CSVs",
                     cmd_eval);
  ev->add_option("--checkpoint", ctx.eval.checkpoints, "Checkpoint file (twice for max-fusion)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ev->add_option("--protocol", ctx.eval.protocol, "single-split | cross-subject | adaptation")
      ->capture_default_str();
  ev->add_option("--subject", ctx.eval.subject, "Adaptation subject (default: first)");
  ev->add_option("--fractions", ctx.eval.fractions, "Adaptation fractions")->capture_default_str();

  CLI::App* seg = sub("segment", "Split a continuous skeleton stream into sign segments",
                      cmd_segment);
  SegmentParams& sp = ctx.segment.params;
  seg->add_option("--input", ctx.segment.input, "Stream file (JSON frame list)");
  seg->add_option("--threshold", sp.velocity_threshold, "Wrist speed threshold (m/frame)")
      ->capture_default_str();
  seg->add_option("--window", sp.smoothing_window, "Smoothing window (frames)")
      ->capture_default_str();
  seg->add_option("--min-len", sp.min_segment_len, "Shortest kept segment")->capture_default_str();
  seg->add_option("--merge-gap", sp.merge_gap, "Merge runs closer than this")
      ->capture_default_str();

  sub("features", "Export the 126 handcrafted features as CSV", cmd_features);

  CLI::App* emb = sub("embed", "Export AI-LSTM embeddings as CSV", cmd_embed);
  emb->add_option("--checkpoint", ctx.eval.checkpoints, "AI-LSTM checkpoint")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    std::vector<std::string> argv = args;
    // Splice config-file entries in front of the explicit flags so the
    // explicit ones win under TakeLast.
    std::string config_path;
    for (std::size_t i = 1; i < argv.size(); ++i) {
      if (argv[i] == "--config" && i + 1 < argv.size()) config_path = argv[i + 1];
      if (argv[i].rfind("--config=", 0) == 0) config_path = argv[i].substr(9);
    }
    if (!config_path.empty() && !argv.empty()) {
      const auto tokens = config_tokens(config_path);
      argv.insert(argv.begin() + 1, tokens.begin(), tokens.end());
    }
    std::reverse(argv.begin(), argv.end());
    try {
      app.parse(argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    for (CLI::App* s : app.get_subcommands()) return handlers.at(s->get_name())(ctx);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace signrec::cli
