#include "advtext/advtext.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advt/corpus.hpp"
#include "advt/errors.hpp"
#include "advt/normalizer.hpp"
#include "advt/pipeline.hpp"
#include "advt/schema.hpp"
#include "advt/tokenizer.hpp"
#include "advt/version.hpp"

// The opaque handle types. They carry the task alongside the data because
// every downstream operation needs the label schema.
struct advt_corpus {
  advt::Task task;
  std::vector<advt::LabeledExample> examples;
};

struct advt_vocab {
  advt::Vocabulary vocab;
};

struct advt_ensemble {
  advt::LoadedEnsemble loaded;
};

namespace {

thread_local std::string t_last_error;

template <typename Fn>
advt_status guarded(Fn&& fn) {
  try {
    fn();
    return ADVT_OK;
  } catch (const advt::DivergenceError& e) {
    t_last_error = e.what();
    return ADVT_ERR_DIVERGENCE;
  } catch (const advt::ParseError& e) {
    t_last_error = e.what();
    return ADVT_ERR_PARSE;
  } catch (const advt::IoError& e) {
    t_last_error = e.what();
    return ADVT_ERR_IO;
  } catch (const advt::ArgumentError& e) {
    t_last_error = e.what();
    return ADVT_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ADVT_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return ADVT_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) throw advt::ArgumentError(std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

advt::Task parse_task_or_throw(const char* task) {
  require(task, "task");
  const auto parsed = advt::LabelSchema::parse_task(task);
  if (!parsed) throw advt::ArgumentError("unknown task \"" + std::string(task) + "\" (use 1a or 1b)");
  return *parsed;
}

advt::NormalizerConfig make_normalizer(const char* rules_csv, int max_punct_run) {
  advt::NormalizerConfig config =
      rules_csv == nullptr
          ? advt::NormalizerConfig::all()
          : advt::NormalizerConfig::from_rules_csv(rules_csv, max_punct_run);
  config.max_punct_run = max_punct_run;
  config.validate();
  return config;
}

std::optional<bool> normalize_override(int mode) {
  if (mode < 0) return std::nullopt;
  return mode != 0;
}

}  // namespace

extern "C" {

const char* advt_version(void) {
  static const std::string version = std::string(advt::kToolName) + " " + advt::kToolVersion;
  return version.c_str();
}

const char* advt_last_error(void) { return t_last_error.c_str(); }

void advt_string_free(char* s) { std::free(s); }

advt_status advt_normalize_text(const char* text, const char* rules_csv, int max_punct_run,
                                char** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    const advt::NormalizerConfig config = make_normalizer(rules_csv, max_punct_run);
    *out = dup_string(advt::normalize(text, config));
  });
}

advt_status advt_corpus_load_tsv(const char* path, const char* task, advt_corpus** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const advt::Task t = parse_task_or_throw(task);
    auto examples = advt::load_tsv(path, advt::LabelSchema::for_task(t));
    *out = new advt_corpus{t, std::move(examples)};
  });
}

advt_status advt_corpus_size(const advt_corpus* corpus, int64_t* out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = static_cast<int64_t>(corpus->examples.size());
  });
}

advt_status advt_corpus_normalize(advt_corpus* corpus, const char* rules_csv, int max_punct_run) {
  return guarded([&] {
    require(corpus, "corpus");
    const advt::NormalizerConfig config = make_normalizer(rules_csv, max_punct_run);
    corpus->examples = advt::normalize_corpus(std::move(corpus->examples), config);
  });
}

advt_status advt_corpus_to_tsv(const advt_corpus* corpus, char** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = dup_string(advt::to_tsv(corpus->examples, advt::LabelSchema::for_task(corpus->task)));
  });
}

advt_status advt_corpus_distribution_json(const advt_corpus* corpus, char** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    const advt::LabelSchema& schema = advt::LabelSchema::for_task(corpus->task);
    *out = dup_string(advt::distribution(corpus->examples, schema).to_json(schema));
  });
}

void advt_corpus_free(advt_corpus* corpus) { delete corpus; }

advt_status advt_vocab_build(const advt_corpus* corpus, int min_freq, int max_size,
                             advt_vocab** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = new advt_vocab{advt::build_vocab(corpus->examples, min_freq, max_size)};
  });
}

advt_status advt_vocab_save(const advt_vocab* vocab, const char* path) {
  return guarded([&] {
    require(vocab, "vocab");
    require(path, "path");
    vocab->vocab.save(path);
  });
}

advt_status advt_vocab_load(const char* path, advt_vocab** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new advt_vocab{advt::Vocabulary::load(path)};
  });
}

advt_status advt_vocab_size(const advt_vocab* vocab, int* out) {
  return guarded([&] {
    require(vocab, "vocab");
    require(out, "out");
    *out = vocab->vocab.size();
  });
}

void advt_vocab_free(advt_vocab* vocab) { delete vocab; }

void advt_train_options_init(advt_train_options* options) {
  if (options == nullptr) return;
  options->task = "1a";
  options->normalize = 1;
  options->rules_csv = nullptr;
  options->max_punct_run = 3;
  options->vocab_min_freq = 1;
  options->vocab_max_size = 20000;
  options->folds = 5;
  options->embed_dim = 16;
  options->hidden_dim = 32;
  options->max_len = 32;
  options->seed = 1;
  options->epochs = 10;
  options->batch_size = 32;
  options->learning_rate = 0.1;
  options->momentum = 0.9;
  options->epsilon = 0.1;
  options->alpha = 0.5;
  options->fgsm_schedule = "alternate";
  options->jobs = 1;
}

advt_status advt_train(const char* corpus_path, const char* out_dir,
                       const advt_train_options* options, char** report_json) {
  return guarded([&] {
    require(corpus_path, "corpus_path");
    require(out_dir, "out_dir");
    require(options, "options");

    advt::TrainOptions opts;
    opts.task = parse_task_or_throw(options->task);
    opts.normalize_text = options->normalize != 0;
    opts.normalizer = make_normalizer(options->rules_csv, options->max_punct_run);
    opts.vocab_min_freq = options->vocab_min_freq;
    opts.vocab_max_size = options->vocab_max_size;
    opts.folds = options->folds;
    opts.embed_dim = options->embed_dim;
    opts.hidden_dim = options->hidden_dim;
    opts.max_len = options->max_len;
    opts.seed = options->seed;
    opts.epochs = options->epochs;
    opts.batch_size = options->batch_size;
    opts.learning_rate = options->learning_rate;
    opts.momentum = options->momentum;
    opts.adv.epsilon = options->epsilon;
    opts.adv.alpha = options->alpha;
    require(options->fgsm_schedule, "fgsm_schedule");
    const auto schedule = advt::parse_schedule(options->fgsm_schedule);
    if (!schedule) {
      throw advt::ArgumentError("unknown FGSM schedule \"" + std::string(options->fgsm_schedule) +
                                "\" (use always, alternate, or never)");
    }
    opts.adv.schedule = *schedule;
    opts.jobs = options->jobs;

    const advt::TrainRunResult result = advt::run_train(corpus_path, out_dir, opts);
    if (report_json != nullptr) *report_json = dup_string(result.report.to_json());
  });
}

advt_status advt_train_from_manifest(const char* manifest_path, const char* out_dir, int jobs,
                                     char** report_json) {
  return guarded([&] {
    require(manifest_path, "manifest_path");
    require(out_dir, "out_dir");
    const advt::TrainRunResult result = advt::run_train_manifest(manifest_path, out_dir, jobs);
    if (report_json != nullptr) *report_json = dup_string(result.report.to_json());
  });
}

advt_status advt_ensemble_load(const char* dir, advt_ensemble** out) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new advt_ensemble{advt::load_ensemble(dir)};
  });
}

void advt_ensemble_free(advt_ensemble* ensemble) { delete ensemble; }

advt_status advt_evaluate(const advt_ensemble* ensemble, const char* corpus_path,
                          int normalize_mode, char** report_json, char** table) {
  return guarded([&] {
    require(ensemble, "ensemble");
    require(corpus_path, "corpus_path");
    require(report_json, "report_json");
    const advt::EvalRunResult result =
        advt::run_evaluate(ensemble->loaded, corpus_path, normalize_override(normalize_mode));
    *report_json = dup_string(result.json);
    if (table != nullptr) *table = dup_string(result.table);
  });
}

advt_status advt_predict_tsv(const advt_ensemble* ensemble, const char* input_path,
                             int normalize_mode, char** out) {
  return guarded([&] {
    require(ensemble, "ensemble");
    require(input_path, "input_path");
    require(out, "out");
    *out = dup_string(
        advt::run_predict(ensemble->loaded, input_path, normalize_override(normalize_mode)));
  });
}

}  // extern "C"
