#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advt/corpus.hpp"
#include "advt/evaluation.hpp"
#include "advt/normalizer.hpp"
#include "advt/trainer.hpp"

namespace advt {

/// Everything a training run needs that is not in the corpus itself.
/// Model and fold seeds all derive from the single seed here.
struct TrainOptions {
  Task task = Task::kTypeOfHate;
  bool normalize_text = true;
  NormalizerConfig normalizer = NormalizerConfig::all();
  int vocab_min_freq = 1;
  int vocab_max_size = 20000;
  int folds = 5;
  int embed_dim = 16;
  int hidden_dim = 32;
  int max_len = 32;
  uint64_t seed = 1;
  int epochs = 10;
  int batch_size = 32;
  double learning_rate = 0.1;
  double momentum = 0.9;
  AdvConfig adv;
  int jobs = 1;
};

/// The resolved configuration of one training run, written as
/// manifest.json next to the artifacts it describes. Re-running from a
/// manifest against the unchanged corpus reproduces every artifact
/// byte-for-byte.
struct RunManifest {
  std::string tool;
  std::string version;
  Task task = Task::kTypeOfHate;
  std::string corpus_path;
  int64_t corpus_examples = 0;
  bool normalize_text = true;
  NormalizerConfig normalizer;
  int vocab_min_freq = 1;
  int vocab_max_size = 20000;
  std::string vocab_file = "vocab.txt";
  int vocab_size = 0;
  int folds = 0;
  uint64_t fold_seed = 0;
  ModelConfig model;
  TrainConfig train;
  std::vector<std::string> member_files;

  std::string to_json() const;
  static RunManifest from_json(std::string_view text, const std::string& source);
  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

struct TrainRunResult {
  RunManifest manifest;
  TrainingReport report;
};

/// Full training pipeline: load TSV, normalize (optional), build the
/// vocabulary, make the stratified fold plan, train one member per fold,
/// and persist everything under out_dir: manifest.json, vocab.txt,
/// member_<f>.bin per fold, and training_report.json. Nothing is written
/// outside out_dir.
TrainRunResult run_train(const std::string& corpus_path, const std::string& out_dir,
                         const TrainOptions& options);

/// Re-runs a recorded manifest against its corpus and writes the artifacts
/// to out_dir. Errors out if the corpus no longer matches the manifest
/// (example count or resulting vocabulary size changed).
TrainRunResult run_train_manifest(const std::string& manifest_path, const std::string& out_dir,
                                  int jobs);

struct LoadedEnsemble {
  Ensemble ensemble;
  RunManifest manifest;
};

/// Reads manifest.json, the vocabulary, and every member file from an
/// ensemble directory produced by run_train.
LoadedEnsemble load_ensemble(const std::string& dir);

struct EvalRunResult {
  EvalReport report;
  std::string json;   // report JSON, the machine-readable artifact
  std::string table;  // human-readable summary for standard output
};

/// Scores a labeled TSV with the ensemble. Normalization follows the
/// manifest unless normalize_override says otherwise.
EvalRunResult run_evaluate(const LoadedEnsemble& loaded, const std::string& corpus_path,
                           std::optional<bool> normalize_override = std::nullopt);

/// Classifies a 2-column (id, text) TSV. Returns a TSV with header
/// "id<TAB>label<TAB>probability", rows in input order, probability =
/// the ensemble's mean softmax mass on the predicted class.
std::string run_predict(const LoadedEnsemble& loaded, const std::string& input_path,
                        std::optional<bool> normalize_override = std::nullopt);

}  // namespace advt
