#include "advt/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "advt/errors.hpp"
#include "advt/version.hpp"

namespace advt {

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

/// The shared body of run_train and run_train_manifest: `m` carries the
/// resolved configuration; when verify_resolved is set the corpus-derived
/// fields must match what the manifest recorded, otherwise they are
/// filled in here.
TrainRunResult run_resolved(RunManifest m, const std::string& out_dir, int jobs,
                            bool verify_resolved) {
  const LabelSchema& schema = LabelSchema::for_task(m.task);
  std::vector<LabeledExample> examples = load_tsv(m.corpus_path, schema);
  if (m.normalize_text) examples = normalize_corpus(std::move(examples), m.normalizer);
  const Vocabulary vocab = build_vocab(examples, m.vocab_min_freq, m.vocab_max_size);

  if (verify_resolved) {
    if (static_cast<int64_t>(examples.size()) != m.corpus_examples) {
      throw ArgumentError("manifest mismatch: corpus " + m.corpus_path + " now has " +
                          std::to_string(examples.size()) + " examples, manifest recorded " +
                          std::to_string(m.corpus_examples));
    }
    if (vocab.size() != m.vocab_size || vocab.size() != m.model.vocab_size) {
      throw ArgumentError("manifest mismatch: corpus " + m.corpus_path + " now yields " +
                          std::to_string(vocab.size()) + " vocabulary entries, manifest recorded " +
                          std::to_string(m.vocab_size));
    }
    if (m.model.class_count != schema.class_count()) {
      throw ArgumentError("manifest mismatch: model class_count " +
                          std::to_string(m.model.class_count) + " does not fit task " +
                          schema.task_name());
    }
    if (m.member_files.size() != static_cast<size_t>(m.folds)) {
      throw ArgumentError("manifest mismatch: " + std::to_string(m.member_files.size()) +
                          " member files listed for " + std::to_string(m.folds) + " folds");
    }
  } else {
    m.corpus_examples = static_cast<int64_t>(examples.size());
    m.vocab_size = vocab.size();
    m.model.vocab_size = vocab.size();
    m.model.class_count = schema.class_count();
    m.member_files.clear();
    for (int f = 0; f < m.folds; ++f) {
      m.member_files.push_back("member_" + std::to_string(f) + ".bin");
    }
  }

  const FoldPlan plan = stratified_kfold(examples, m.folds, m.fold_seed);
  KfoldOptions kfold_options;
  kfold_options.jobs = jobs;
  TrainResult trained =
      train_kfold(examples, plan, m.task, vocab, m.train, m.model, kfold_options);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir + ": " + ec.message());

  vocab.save(join(out_dir, m.vocab_file));
  for (size_t f = 0; f < trained.ensemble.members.size(); ++f) {
    trained.ensemble.members[f].params.save(join(out_dir, m.member_files[f]));
  }
  write_file(join(out_dir, "training_report.json"), trained.report.to_json() + "\n");
  m.save(join(out_dir, "manifest.json"));

  return {std::move(m), std::move(trained.report)};
}

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::json j{
      {"tool", tool},
      {"version", version},
      {"task", LabelSchema::for_task(task).task_name()},
      {"corpus", {{"path", corpus_path}, {"examples", corpus_examples}}},
      {"normalize", normalize_text},
      {"normalizer",
       {{"rules", normalizer.rules_csv()}, {"max_punct_run", normalizer.max_punct_run}}},
      {"vocab",
       {{"file", vocab_file},
        {"min_freq", vocab_min_freq},
        {"max_size", vocab_max_size},
        {"size", vocab_size}}},
      {"folds", {{"k", folds}, {"seed", fold_seed}}},
      {"model",
       {{"vocab_size", model.vocab_size},
        {"embed_dim", model.embed_dim},
        {"hidden_dim", model.hidden_dim},
        {"class_count", model.class_count},
        {"max_len", model.max_len},
        {"seed", model.seed}}},
      {"train",
       {{"epochs", train.epochs},
        {"batch_size", train.batch_size},
        {"learning_rate", train.learning_rate},
        {"momentum", train.momentum},
        {"seed", train.seed},
        {"shuffle_each_epoch", train.shuffle_each_epoch}}},
      {"adv",
       {{"epsilon", train.adv.epsilon},
        {"alpha", train.adv.alpha},
        {"schedule", schedule_name(train.adv.schedule)}}},
      {"members", member_files},
  };
  return j.dump(2);
}

RunManifest RunManifest::from_json(std::string_view text, const std::string& source) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();

    const std::string task_name = j.at("task").get<std::string>();
    const auto task = LabelSchema::parse_task(task_name);
    if (!task) throw ParseError(source + ": unknown task \"" + task_name + "\"");
    m.task = *task;

    m.corpus_path = j.at("corpus").at("path").get<std::string>();
    m.corpus_examples = j.at("corpus").at("examples").get<int64_t>();
    m.normalize_text = j.at("normalize").get<bool>();
    m.normalizer = NormalizerConfig::from_rules_csv(
        j.at("normalizer").at("rules").get<std::string>(),
        j.at("normalizer").at("max_punct_run").get<int>());

    m.vocab_file = j.at("vocab").at("file").get<std::string>();
    m.vocab_min_freq = j.at("vocab").at("min_freq").get<int>();
    m.vocab_max_size = j.at("vocab").at("max_size").get<int>();
    m.vocab_size = j.at("vocab").at("size").get<int>();

    m.folds = j.at("folds").at("k").get<int>();
    m.fold_seed = j.at("folds").at("seed").get<uint64_t>();

    m.model.vocab_size = j.at("model").at("vocab_size").get<int>();
    m.model.embed_dim = j.at("model").at("embed_dim").get<int>();
    m.model.hidden_dim = j.at("model").at("hidden_dim").get<int>();
    m.model.class_count = j.at("model").at("class_count").get<int>();
    m.model.max_len = j.at("model").at("max_len").get<int>();
    m.model.seed = j.at("model").at("seed").get<uint64_t>();

    m.train.epochs = j.at("train").at("epochs").get<int>();
    m.train.batch_size = j.at("train").at("batch_size").get<int>();
    m.train.learning_rate = j.at("train").at("learning_rate").get<double>();
    m.train.momentum = j.at("train").at("momentum").get<double>();
    m.train.seed = j.at("train").at("seed").get<uint64_t>();
    m.train.shuffle_each_epoch = j.at("train").at("shuffle_each_epoch").get<bool>();

    m.train.adv.epsilon = j.at("adv").at("epsilon").get<double>();
    m.train.adv.alpha = j.at("adv").at("alpha").get<double>();
    const std::string sched_name = j.at("adv").at("schedule").get<std::string>();
    const auto sched = parse_schedule(sched_name);
    if (!sched) throw ParseError(source + ": unknown schedule \"" + sched_name + "\"");
    m.train.adv.schedule = *sched;

    m.member_files = j.at("members").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

void RunManifest::save(const std::string& path) const { write_file(path, to_json() + "\n"); }

RunManifest RunManifest::load(const std::string& path) {
  return from_json(read_file(path), path);
}

TrainRunResult run_train(const std::string& corpus_path, const std::string& out_dir,
                         const TrainOptions& options) {
  RunManifest m;
  m.tool = kToolName;
  m.version = kToolVersion;
  m.task = options.task;
  m.corpus_path = corpus_path;
  m.normalize_text = options.normalize_text;
  m.normalizer = options.normalizer;
  m.vocab_min_freq = options.vocab_min_freq;
  m.vocab_max_size = options.vocab_max_size;
  m.folds = options.folds;
  m.fold_seed = options.seed;
  m.model.embed_dim = options.embed_dim;
  m.model.hidden_dim = options.hidden_dim;
  m.model.max_len = options.max_len;
  m.model.seed = options.seed;
  m.train.epochs = options.epochs;
  m.train.batch_size = options.batch_size;
  m.train.learning_rate = options.learning_rate;
  m.train.momentum = options.momentum;
  m.train.seed = options.seed;
  m.train.adv = options.adv;
  m.train.shuffle_each_epoch = true;
  return run_resolved(std::move(m), out_dir, options.jobs, /*verify_resolved=*/false);
}

TrainRunResult run_train_manifest(const std::string& manifest_path, const std::string& out_dir,
                                  int jobs) {
  RunManifest m = RunManifest::load(manifest_path);
  m.tool = kToolName;
  m.version = kToolVersion;
  return run_resolved(std::move(m), out_dir, jobs, /*verify_resolved=*/true);
}

LoadedEnsemble load_ensemble(const std::string& dir) {
  LoadedEnsemble out;
  out.manifest = RunManifest::load(join(dir, "manifest.json"));
  out.ensemble.task = out.manifest.task;
  out.ensemble.vocab = Vocabulary::load(join(dir, out.manifest.vocab_file));
  out.ensemble.config = out.manifest.model;
  if (out.manifest.member_files.empty()) {
    throw ParseError(join(dir, "manifest.json") + ": no ensemble members listed");
  }
  int fold = 0;
  for (const auto& file : out.manifest.member_files) {
    EnsembleMember member;
    member.params = Parameters::load(join(dir, file));
    member.fold_index = fold++;
    out.ensemble.members.push_back(std::move(member));
  }
  out.ensemble.validate();
  return out;
}

EvalRunResult run_evaluate(const LoadedEnsemble& loaded, const std::string& corpus_path,
                           std::optional<bool> normalize_override) {
  const LabelSchema& schema = loaded.ensemble.schema();
  std::vector<LabeledExample> examples = load_tsv(corpus_path, schema);
  if (normalize_override.value_or(loaded.manifest.normalize_text)) {
    examples = normalize_corpus(std::move(examples), loaded.manifest.normalizer);
  }
  const std::vector<EncodedExample> encoded =
      encode_corpus(examples, loaded.ensemble.vocab, loaded.ensemble.config.max_len);

  std::vector<int> golds;
  std::vector<int> preds;
  golds.reserve(encoded.size());
  preds.reserve(encoded.size());
  for (const auto& ex : encoded) {
    golds.push_back(ex.label);
    preds.push_back(ensemble_predict(loaded.ensemble, ex).label);
  }

  EvalRunResult out;
  out.report = evaluate_predictions(golds, preds, schema);
  out.json = report_to_json(out.report, schema);
  out.table = report_to_table(out.report, schema);
  return out;
}

std::string run_predict(const LoadedEnsemble& loaded, const std::string& input_path,
                        std::optional<bool> normalize_override) {
  const LabelSchema& schema = loaded.ensemble.schema();
  const std::vector<UnlabeledExample> rows = load_unlabeled_tsv(input_path);
  const bool do_normalize = normalize_override.value_or(loaded.manifest.normalize_text);

  std::string out = "id\tlabel\tprobability\n";
  for (const auto& row : rows) {
    const std::string text =
        do_normalize ? normalize(row.raw_text, loaded.manifest.normalizer) : row.raw_text;
    const EncodedExample ex = encode(text, loaded.ensemble.vocab, loaded.ensemble.config.max_len);
    const Prediction pred = ensemble_predict(loaded.ensemble, ex);
    char prob[32];
    std::snprintf(prob, sizeof prob, "%.6f", pred.probs[static_cast<size_t>(pred.label)]);
    out += row.id;
    out += '\t';
    out += schema.name(pred.label);
    out += '\t';
    out += prob;
    out += '\n';
  }
  return out;
}

}  // namespace advt
