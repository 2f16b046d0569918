#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advt/adversarial.hpp"
#include "advt/corpus.hpp"
#include "advt/model.hpp"
#include "advt/schema.hpp"
#include "advt/tokenizer.hpp"

namespace advt {

/// Optimizer and loop settings for one model. Batch gradients are averaged
/// (not summed), so the learning rate does not depend on batch size.
struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  double learning_rate = 0.1;
  double momentum = 0.9;
  uint64_t seed = 1;
  AdvConfig adv;
  bool shuffle_each_epoch = true;

  void validate() const;
};

struct EpochLog {
  int epoch = 0;
  bool perturbed = false;
  double mean_loss = 0.0;
};

struct FoldLog {
  int fold = 0;
  double val_micro_f1 = 0.0;
  std::vector<EpochLog> epochs;
};

struct TrainingReport {
  std::vector<FoldLog> folds;

  /// {"folds":[{"fold","val_micro_f1","epochs":[{"epoch","perturbed","mean_loss"}]}]}
  std::string to_json() const;
};

/// Mini-batch momentum SGD (v <- momentum*v - lr*g; theta <- theta + v)
/// over shuffled epochs. Epochs the schedule marks as perturbed use the
/// combined clean+adversarial step; the rest use the plain step. The PAD
/// embedding row is never touched: its gradient is structurally zero.
/// A non-finite loss at any step aborts with DivergenceError naming the
/// epoch and batch. Bit-deterministic in (train_set, configs).
Parameters train_single(const std::vector<EncodedExample>& train_set, const TrainConfig& config,
                        const ModelConfig& model_config,
                        std::vector<EpochLog>* epoch_log = nullptr);

struct EnsembleMember {
  Parameters params;
  int fold_index = 0;
};

/// The per-fold models of one k-fold run plus everything needed to score
/// new text: the vocabulary, the task, and the shared model shape.
struct Ensemble {
  Task task = Task::kTypeOfHate;
  Vocabulary vocab;
  ModelConfig config;
  std::vector<EnsembleMember> members;

  const LabelSchema& schema() const { return LabelSchema::for_task(task); }
  void validate() const;
};

struct Prediction {
  int label = 0;
  std::vector<double> probs;  // C, sums to 1 (up to rounding)
};

/// probs = arithmetic mean of the members' softmax outputs; label = argmax,
/// ties broken toward the lowest class index.
Prediction ensemble_predict(const Ensemble& ensemble, const EncodedExample& example);

struct KfoldOptions {
  int jobs = 1;  // fold-level parallelism; the result does not depend on it
};

struct TrainResult {
  Ensemble ensemble;
  TrainingReport report;
};

/// Trains one member per fold of the plan: member f sees every example
/// outside fold f and is then scored on fold f (held-out micro-F1 in the
/// report). Examples are encoded with the given vocabulary as-is; normalize
/// text before calling if normalization is wanted. Each fold draws its init
/// and shuffle seeds from disjoint derive_seed streams of the base seeds,
/// so results are bit-identical whether folds run sequentially or on
/// options.jobs threads.
TrainResult train_kfold(const std::vector<LabeledExample>& dataset, const FoldPlan& plan,
                        Task task, const Vocabulary& vocab, const TrainConfig& config,
                        const ModelConfig& model_config, const KfoldOptions& options = {});

}  // namespace advt
