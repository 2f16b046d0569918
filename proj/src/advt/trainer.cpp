#include "advt/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "advt/errors.hpp"
#include "advt/evaluation.hpp"
#include "advt/rng.hpp"

namespace advt {

void TrainConfig::validate() const {
  if (epochs < 1) throw ArgumentError("train config: epochs must be >= 1");
  if (batch_size < 1) throw ArgumentError("train config: batch_size must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ArgumentError("train config: learning_rate must be a positive finite number");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ArgumentError("train config: momentum must be in [0, 1)");
  }
  adv.validate();
}

namespace {

void update_tensor(std::vector<double>& theta, std::vector<double>& velocity,
                   const std::vector<double>& grad, double lr, double momentum) {
  for (size_t i = 0; i < theta.size(); ++i) {
    velocity[i] = momentum * velocity[i] - lr * grad[i];
    theta[i] += velocity[i];
  }
}

void apply_update(Parameters& params, Gradients& velocity, const Gradients& grad,
                  const TrainConfig& config) {
  const double lr = config.learning_rate;
  const double mu = config.momentum;
  update_tensor(params.embedding, velocity.embedding, grad.embedding, lr, mu);
  update_tensor(params.hidden_w, velocity.hidden_w, grad.hidden_w, lr, mu);
  update_tensor(params.hidden_b, velocity.hidden_b, grad.hidden_b, lr, mu);
  update_tensor(params.out_w, velocity.out_w, grad.out_w, lr, mu);
  update_tensor(params.out_b, velocity.out_b, grad.out_b, lr, mu);
}

int argmax_lowest(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[static_cast<size_t>(i)] > values[static_cast<size_t>(best)]) best = i;
  }
  return best;
}

}  // namespace

Parameters train_single(const std::vector<EncodedExample>& train_set, const TrainConfig& config,
                        const ModelConfig& model_config, std::vector<EpochLog>* epoch_log) {
  config.validate();
  model_config.validate();
  if (train_set.empty()) throw ArgumentError("train_single: empty training set");

  Parameters params = init_params(model_config);
  Gradients velocity = Gradients::zeros(model_config);
  SplitMix64 rng(config.seed);

  std::vector<size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), size_t{0});

  int last_batch = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle_each_epoch) deterministic_shuffle(order, rng);
    const bool perturbed = should_perturb(epoch, config.adv.schedule);
    double loss_sum = 0.0;

    size_t cursor = 0;
    int batch = 0;
    while (cursor < order.size()) {
      const size_t end = std::min(cursor + static_cast<size_t>(config.batch_size), order.size());
      Gradients mean = Gradients::zeros(model_config);
      for (size_t i = cursor; i < end; ++i) {
        const EncodedExample& ex = train_set[order[i]];
        const StepResult step =
            perturbed ? combined_step(params, ex, config.adv) : clean_step(params, ex);
        if (!std::isfinite(step.loss)) {
          throw DivergenceError("training diverged: non-finite loss at epoch " +
                                    std::to_string(epoch) + ", batch " + std::to_string(batch),
                                epoch, batch);
        }
        loss_sum += step.loss;
        mean.add_scaled_params(step.grads, 1.0);
      }
      mean.scale_params(1.0 / static_cast<double>(end - cursor));
      apply_update(params, velocity, mean, config);
      cursor = end;
      last_batch = batch;
      ++batch;
    }

    if (epoch_log) {
      epoch_log->push_back({epoch, perturbed, loss_sum / static_cast<double>(order.size())});
    }
  }

  // Losses stay finite one step behind the parameters, so check the end state.
  if (!params.all_finite()) {
    throw DivergenceError("training diverged: non-finite parameters after epoch " +
                              std::to_string(config.epochs) + ", batch " +
                              std::to_string(last_batch),
                          config.epochs, last_batch);
  }
  return params;
}

void Ensemble::validate() const {
  if (members.empty()) throw ArgumentError("ensemble has no members");
  config.validate();
  if (config.vocab_size != vocab.size()) {
    throw ArgumentError("ensemble: model vocab_size " + std::to_string(config.vocab_size) +
                        " does not match vocabulary size " + std::to_string(vocab.size()));
  }
  if (config.class_count != schema().class_count()) {
    throw ArgumentError("ensemble: model class_count " + std::to_string(config.class_count) +
                        " does not match task " + schema().task_name());
  }
  for (const auto& member : members) {
    if (!same_shape(member.params.config, config)) {
      throw ArgumentError("ensemble: member " + std::to_string(member.fold_index) +
                          " has a different model shape");
    }
  }
}

Prediction ensemble_predict(const Ensemble& ensemble, const EncodedExample& example) {
  ensemble.validate();
  Prediction pred;
  pred.probs.assign(static_cast<size_t>(ensemble.config.class_count), 0.0);
  for (const auto& member : ensemble.members) {
    const ForwardCache cache = forward(member.params, example);
    const std::vector<double> probs = softmax(cache.logits);
    for (size_t c = 0; c < pred.probs.size(); ++c) pred.probs[c] += probs[c];
  }
  const double inv = 1.0 / static_cast<double>(ensemble.members.size());
  for (double& p : pred.probs) p *= inv;
  pred.label = argmax_lowest(pred.probs);
  return pred;
}

TrainResult train_kfold(const std::vector<LabeledExample>& dataset, const FoldPlan& plan,
                        Task task, const Vocabulary& vocab, const TrainConfig& config,
                        const ModelConfig& model_config, const KfoldOptions& options) {
  config.validate();
  model_config.validate();
  if (options.jobs < 1) throw ArgumentError("train_kfold: jobs must be >= 1");
  if (plan.k < 2) throw ArgumentError("train_kfold: fold plan needs k >= 2");
  if (plan.assignment.size() != dataset.size()) {
    throw ArgumentError("train_kfold: fold plan covers " + std::to_string(plan.assignment.size()) +
                        " examples but the dataset has " + std::to_string(dataset.size()));
  }
  const LabelSchema& schema = LabelSchema::for_task(task);
  if (model_config.vocab_size != vocab.size()) {
    throw ArgumentError("train_kfold: model vocab_size " +
                        std::to_string(model_config.vocab_size) +
                        " does not match vocabulary size " + std::to_string(vocab.size()));
  }
  if (model_config.class_count != schema.class_count()) {
    throw ArgumentError("train_kfold: model class_count " +
                        std::to_string(model_config.class_count) + " does not match task " +
                        std::string(schema.task_name()));
  }

  const std::vector<EncodedExample> encoded = encode_corpus(dataset, vocab, model_config.max_len);

  TrainResult result;
  result.ensemble.task = task;
  result.ensemble.vocab = vocab;
  result.ensemble.config = model_config;
  result.ensemble.members.resize(static_cast<size_t>(plan.k));
  result.report.folds.resize(static_cast<size_t>(plan.k));

  // Each fold touches only its own member and report slots, so folds can
  // run on separate threads with no synchronization beyond the join.
  auto run_fold = [&](int fold) {
    std::vector<EncodedExample> train_set;
    std::vector<int> val_golds;
    std::vector<size_t> val_indices;
    for (size_t i = 0; i < encoded.size(); ++i) {
      if (plan.assignment[i] == fold) {
        val_indices.push_back(i);
      } else {
        train_set.push_back(encoded[i]);
      }
    }

    // Disjoint streams: even streams seed member init, odd streams the
    // epoch shuffles, so the two never collide even with equal base seeds.
    ModelConfig mc = model_config;
    mc.seed = derive_seed(model_config.seed, static_cast<uint64_t>(2 * fold));
    TrainConfig tc = config;
    tc.seed = derive_seed(config.seed, static_cast<uint64_t>(2 * fold) + 1);

    FoldLog& log = result.report.folds[static_cast<size_t>(fold)];
    log.fold = fold;
    Parameters params = train_single(train_set, tc, mc, &log.epochs);

    std::vector<int> preds;
    preds.reserve(val_indices.size());
    for (size_t i : val_indices) {
      const ForwardCache cache = forward(params, encoded[i]);
      preds.push_back(argmax_lowest(cache.logits));
      val_golds.push_back(encoded[i].label);
    }
    log.val_micro_f1 = micro_f1(confusion(val_golds, preds, schema));
    result.ensemble.members[static_cast<size_t>(fold)] = {std::move(params), fold};
  };

  const int jobs = std::min(options.jobs, plan.k);
  if (jobs <= 1) {
    for (int fold = 0; fold < plan.k; ++fold) run_fold(fold);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> failures(static_cast<size_t>(plan.k));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const int fold = next.fetch_add(1);
          if (fold >= plan.k) return;
          try {
            run_fold(fold);
          } catch (...) {
            failures[static_cast<size_t>(fold)] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    // Rethrow the lowest-fold failure so errors do not depend on timing.
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  result.ensemble.validate();
  return result;
}

std::string TrainingReport::to_json() const {
  nlohmann::json folds_json = nlohmann::json::array();
  for (const auto& fold : folds) {
    nlohmann::json epochs = nlohmann::json::array();
    for (const auto& e : fold.epochs) {
      epochs.push_back({{"epoch", e.epoch}, {"perturbed", e.perturbed}, {"mean_loss", e.mean_loss}});
    }
    folds_json.push_back(
        {{"fold", fold.fold}, {"val_micro_f1", fold.val_micro_f1}, {"epochs", epochs}});
  }
  return nlohmann::json{{"folds", folds_json}}.dump(2);
}

}  // namespace advt
