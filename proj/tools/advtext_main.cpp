// advtext command-line front end. Everything goes through the C API of
// libadvtext; this translation unit holds only argument plumbing.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "advtext/advtext.h"

namespace {

// Owns a char* returned by the library.
struct OwnedString {
  char* ptr = nullptr;
  OwnedString() = default;
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  ~OwnedString() { advt_string_free(ptr); }
};

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDivergence = 3;

int report_failure(advt_status status) {
  std::fprintf(stderr, "advtext: %s\n", advt_last_error());
  return status == ADVT_ERR_DIVERGENCE ? kExitDivergence : kExitInput;
}

// Writes content to path, or to standard output when path is empty.
int emit(const std::string& path, const char* content) {
  if (path.empty()) {
    std::fwrite(content, 1, std::strlen(content), stdout);
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "advtext: cannot open %s for writing\n", path.c_str());
    return kExitInput;
  }
  out << content;
  out.flush();
  if (!out) {
    std::fprintf(stderr, "advtext: write failure on %s\n", path.c_str());
    return kExitInput;
  }
  return kExitOk;
}

struct NormalizeArgs {
  std::string input;  // empty: raw lines from standard input
  std::string task = "1a";
  std::string rules;  // empty: all rules
  bool has_rules = false;
  int max_punct_run = 3;
  std::string out;
};

int run_normalize(const NormalizeArgs& args) {
  const char* rules_csv = args.has_rules ? args.rules.c_str() : nullptr;

  if (args.input.empty()) {
    // Raw-line mode: one normalized line out per line in.
    std::string all(std::istreambuf_iterator<char>(std::cin), {});
    std::string result;
    size_t pos = 0;
    while (pos < all.size()) {
      size_t nl = all.find('\n', pos);
      const size_t end = nl == std::string::npos ? all.size() : nl;
      const std::string line = all.substr(pos, end - pos);
      OwnedString normalized;
      if (advt_status s = advt_normalize_text(line.c_str(), rules_csv, args.max_punct_run,
                                              &normalized.ptr)) {
        return report_failure(s);
      }
      result += normalized.ptr;
      result += '\n';
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
    return emit(args.out, result.c_str());
  }

  advt_corpus* corpus = nullptr;
  if (advt_status s = advt_corpus_load_tsv(args.input.c_str(), args.task.c_str(), &corpus)) {
    return report_failure(s);
  }
  std::unique_ptr<advt_corpus, decltype(&advt_corpus_free)> guard(corpus, advt_corpus_free);
  if (advt_status s = advt_corpus_normalize(corpus, rules_csv, args.max_punct_run)) {
    return report_failure(s);
  }
  OwnedString tsv;
  if (advt_status s = advt_corpus_to_tsv(corpus, &tsv.ptr)) return report_failure(s);
  return emit(args.out, tsv.ptr);
}

struct DistributionArgs {
  std::string input;
  std::string task = "1a";
};

int run_distribution(const DistributionArgs& args) {
  advt_corpus* corpus = nullptr;
  if (advt_status s = advt_corpus_load_tsv(args.input.c_str(), args.task.c_str(), &corpus)) {
    return report_failure(s);
  }
  std::unique_ptr<advt_corpus, decltype(&advt_corpus_free)> guard(corpus, advt_corpus_free);
  OwnedString json;
  if (advt_status s = advt_corpus_distribution_json(corpus, &json.ptr)) return report_failure(s);
  std::printf("%s\n", json.ptr);
  return kExitOk;
}

struct BuildVocabArgs {
  std::string input;
  std::string task = "1a";
  int min_freq = 1;
  int max_size = 20000;
  bool no_normalize = false;
  std::string rules;
  bool has_rules = false;
  int max_punct_run = 3;
  std::string out;
};

int run_build_vocab(const BuildVocabArgs& args) {
  advt_corpus* corpus = nullptr;
  if (advt_status s = advt_corpus_load_tsv(args.input.c_str(), args.task.c_str(), &corpus)) {
    return report_failure(s);
  }
  std::unique_ptr<advt_corpus, decltype(&advt_corpus_free)> guard(corpus, advt_corpus_free);
  if (!args.no_normalize) {
    const char* rules_csv = args.has_rules ? args.rules.c_str() : nullptr;
    if (advt_status s = advt_corpus_normalize(corpus, rules_csv, args.max_punct_run)) {
      return report_failure(s);
    }
  }
  advt_vocab* vocab = nullptr;
  if (advt_status s = advt_vocab_build(corpus, args.min_freq, args.max_size, &vocab)) {
    return report_failure(s);
  }
  std::unique_ptr<advt_vocab, decltype(&advt_vocab_free)> vguard(vocab, advt_vocab_free);
  if (advt_status s = advt_vocab_save(vocab, args.out.c_str())) return report_failure(s);
  int size = 0;
  if (advt_status s = advt_vocab_size(vocab, &size)) return report_failure(s);
  std::printf("wrote %s (%d entries)\n", args.out.c_str(), size);
  return kExitOk;
}

struct TrainArgs {
  std::string corpus;
  std::string from_manifest;
  std::string out;
  advt_train_options options{};
  std::string task = "1a";
  std::string rules;
  bool has_rules = false;
  bool no_normalize = false;
  std::string schedule = "alternate";
};

int run_train_cmd(const TrainArgs& args) {
  OwnedString report;
  advt_status s;
  if (!args.from_manifest.empty()) {
    s = advt_train_from_manifest(args.from_manifest.c_str(), args.out.c_str(), args.options.jobs,
                                 &report.ptr);
  } else {
    advt_train_options options = args.options;
    options.task = args.task.c_str();
    options.normalize = args.no_normalize ? 0 : 1;
    options.rules_csv = args.has_rules ? args.rules.c_str() : nullptr;
    options.fgsm_schedule = args.schedule.c_str();
    s = advt_train(args.corpus.c_str(), args.out.c_str(), &options, &report.ptr);
  }
  if (s) return report_failure(s);
  std::printf("%s\n", report.ptr);
  return kExitOk;
}

struct ScoreArgs {
  std::string ensemble_dir;
  std::string input;
  int normalize_mode = -1;  // -1 manifest, 0 off, 1 on
  std::string out;
};

int run_evaluate_cmd(const ScoreArgs& args) {
  advt_ensemble* ensemble = nullptr;
  if (advt_status s = advt_ensemble_load(args.ensemble_dir.c_str(), &ensemble)) {
    return report_failure(s);
  }
  std::unique_ptr<advt_ensemble, decltype(&advt_ensemble_free)> guard(ensemble,
                                                                      advt_ensemble_free);
  OwnedString json;
  OwnedString table;
  if (advt_status s = advt_evaluate(ensemble, args.input.c_str(), args.normalize_mode, &json.ptr,
                                    &table.ptr)) {
    return report_failure(s);
  }
  std::fputs(table.ptr, stdout);
  if (!args.out.empty()) {
    std::string content = json.ptr;
    content += '\n';
    return emit(args.out, content.c_str());
  }
  return kExitOk;
}

int run_predict_cmd(const ScoreArgs& args) {
  advt_ensemble* ensemble = nullptr;
  if (advt_status s = advt_ensemble_load(args.ensemble_dir.c_str(), &ensemble)) {
    return report_failure(s);
  }
  std::unique_ptr<advt_ensemble, decltype(&advt_ensemble_free)> guard(ensemble,
                                                                      advt_ensemble_free);
  OwnedString tsv;
  if (advt_status s = advt_predict_tsv(ensemble, args.input.c_str(), args.normalize_mode,
                                       &tsv.ptr)) {
    return report_failure(s);
  }
  return emit(args.out, tsv.ptr);
}

void add_normalize_mode_flags(CLI::App* cmd, int* mode) {
  auto* on = cmd->add_flag_callback(
      "--normalize", [mode] { *mode = 1; },
      "Normalize input text (default: follow the ensemble manifest)");
  auto* off = cmd->add_flag_callback(
      "--no-normalize", [mode] { *mode = 0; }, "Skip text normalization");
  on->excludes(off);
  off->excludes(on);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarially fine-tuned hate-speech classification pipeline"};
  app.set_version_flag("--version", advt_version());
  app.require_subcommand(1);

  NormalizeArgs norm_args;
  auto* norm = app.add_subcommand(
      "normalize", "Normalize a corpus TSV, or raw lines from standard input");
  norm->add_option("input", norm_args.input,
                   "Corpus TSV; omit to read raw lines from standard input");
  norm->add_option("--task", norm_args.task, "Label schema of the TSV: 1a or 1b")
      ->capture_default_str();
  auto* norm_rules =
      norm->add_option("--rules", norm_args.rules, "Comma-separated rule names (default: all)");
  norm->add_option("--max-punct-run", norm_args.max_punct_run,
                   "Longest run of one punctuation character kept")
      ->capture_default_str();
  norm->add_option("--out", norm_args.out, "Write here instead of standard output");

  DistributionArgs dist_args;
  auto* dist = app.add_subcommand("distribution", "Per-class counts of a corpus as JSON");
  dist->add_option("input", dist_args.input, "Corpus TSV")->required();
  dist->add_option("--task", dist_args.task, "Label schema: 1a or 1b")->capture_default_str();

  BuildVocabArgs vocab_args;
  auto* bv = app.add_subcommand("build-vocab", "Build a token vocabulary from a corpus");
  bv->add_option("input", vocab_args.input, "Corpus TSV")->required();
  bv->add_option("--task", vocab_args.task, "Label schema: 1a or 1b")->capture_default_str();
  bv->add_option("--min-freq", vocab_args.min_freq, "Minimum token frequency")
      ->capture_default_str();
  bv->add_option("--max-size", vocab_args.max_size, "Vocabulary cap including PAD/UNK")
      ->capture_default_str();
  bv->add_flag("--no-normalize", vocab_args.no_normalize, "Skip text normalization");
  auto* bv_rules =
      bv->add_option("--rules", vocab_args.rules, "Comma-separated rule names (default: all)");
  bv->add_option("--max-punct-run", vocab_args.max_punct_run,
                 "Longest run of one punctuation character kept")
      ->capture_default_str();
  bv->add_option("--out", vocab_args.out, "Vocabulary file to write")->required();

  TrainArgs train_args;
  advt_train_options_init(&train_args.options);
  auto* train = app.add_subcommand("train", "Train a stratified k-fold ensemble");
  auto* train_corpus = train->add_option("corpus", train_args.corpus, "Labeled corpus TSV");
  train->add_option("--out", train_args.out, "Ensemble output directory")->required();
  auto* from_manifest = train->add_option("--from-manifest", train_args.from_manifest,
                                          "Re-run a recorded manifest.json");
  std::vector<CLI::Option*> fresh_only;
  fresh_only.push_back(train->add_option("--task", train_args.task, "Label schema: 1a or 1b")
                           ->capture_default_str());
  fresh_only.push_back(train->add_flag("--no-normalize", train_args.no_normalize,
                                       "Skip text normalization"));
  auto* train_rules = train->add_option("--rules", train_args.rules,
                                        "Comma-separated normalizer rule names (default: all)");
  fresh_only.push_back(train_rules);
  fresh_only.push_back(train->add_option("--max-punct-run", train_args.options.max_punct_run,
                                         "Longest run of one punctuation character kept")
                           ->capture_default_str());
  fresh_only.push_back(train->add_option("--min-freq", train_args.options.vocab_min_freq,
                                         "Minimum token frequency")
                           ->capture_default_str());
  fresh_only.push_back(train->add_option("--max-size", train_args.options.vocab_max_size,
                                         "Vocabulary cap including PAD/UNK")
                           ->capture_default_str());
  fresh_only.push_back(
      train->add_option("--folds", train_args.options.folds, "Stratified folds (ensemble size)")
          ->capture_default_str());
  fresh_only.push_back(train->add_option("--embed-dim", train_args.options.embed_dim,
                                         "Embedding dimension")
                           ->capture_default_str());
  fresh_only.push_back(train->add_option("--hidden-dim", train_args.options.hidden_dim,
                                         "Hidden layer width")
                           ->capture_default_str());
  fresh_only.push_back(train->add_option("--max-len", train_args.options.max_len,
                                         "Tokens kept per example")
                           ->capture_default_str());
  fresh_only.push_back(
      train->add_option("--seed", train_args.options.seed, "Seed for folds, init, and shuffles")
          ->capture_default_str());
  fresh_only.push_back(train->add_option("--epochs", train_args.options.epochs, "Training epochs")
                           ->capture_default_str());
  fresh_only.push_back(
      train->add_option("--batch-size", train_args.options.batch_size, "Mini-batch size")
          ->capture_default_str());
  fresh_only.push_back(train->add_option("--learning-rate", train_args.options.learning_rate,
                                         "SGD learning rate")
                           ->capture_default_str());
  fresh_only.push_back(
      train->add_option("--momentum", train_args.options.momentum, "SGD momentum")
          ->capture_default_str());
  fresh_only.push_back(train->add_option("--epsilon", train_args.options.epsilon,
                                         "FGSM perturbation radius (0 disables)")
                           ->capture_default_str());
  fresh_only.push_back(train->add_option("--alpha", train_args.options.alpha,
                                         "Clean-loss weight in the combined loss")
                           ->capture_default_str());
  fresh_only.push_back(train->add_option("--fgsm-schedule", train_args.schedule,
                                         "Adversarial epochs: always, alternate, or never")
                           ->capture_default_str());
  train->add_option("--jobs", train_args.options.jobs,
                    "Threads for fold training (never changes results)")
      ->capture_default_str();
  for (CLI::Option* opt : fresh_only) from_manifest->excludes(opt);
  from_manifest->excludes(train_corpus);

  ScoreArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "Score a labeled TSV with an ensemble");
  eval->add_option("ensemble", eval_args.ensemble_dir, "Ensemble directory")->required();
  eval->add_option("input", eval_args.input, "Labeled corpus TSV")->required();
  add_normalize_mode_flags(eval, &eval_args.normalize_mode);
  eval->add_option("--out", eval_args.out, "Write the report JSON here");

  ScoreArgs predict_args;
  auto* predict = app.add_subcommand("predict", "Classify a 2-column (id, text) TSV");
  predict->add_option("ensemble", predict_args.ensemble_dir, "Ensemble directory")->required();
  predict->add_option("input", predict_args.input, "Input TSV with header id<TAB>text")
      ->required();
  add_normalize_mode_flags(predict, &predict_args.normalize_mode);
  predict->add_option("--out", predict_args.out, "Write predictions here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the error message
    return kExitInput;
  }

  norm_args.has_rules = norm_rules->count() > 0;
  vocab_args.has_rules = bv_rules->count() > 0;
  train_args.has_rules = train_rules->count() > 0;

  if (app.got_subcommand(norm)) return run_normalize(norm_args);
  if (app.got_subcommand(dist)) return run_distribution(dist_args);
  if (app.got_subcommand(bv)) return run_build_vocab(vocab_args);
  if (app.got_subcommand(train)) {
    if (train_args.corpus.empty() && train_args.from_manifest.empty()) {
      std::fprintf(stderr, "advtext: train needs a corpus TSV or --from-manifest\n");
      return kExitInput;
    }
    return run_train_cmd(train_args);
  }
  if (app.got_subcommand(eval)) return run_evaluate_cmd(eval_args);
  if (app.got_subcommand(predict)) return run_predict_cmd(predict_args);
  return kExitInput;  // unreachable: require_subcommand(1)
}
