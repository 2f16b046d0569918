// Exercises the C API strictly through the public header plus the shared
// library -- no core headers, no C++ library symbols.
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <doctest.h>

#include <advtext/advtext.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path = fs::temp_directory_path() /
           ("advtext_capi_" + std::to_string(rd()) + "_" +
            std::to_string(counter.fetch_add(1)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  REQUIRE(out.good());
}

// Frees the C string on scope exit.
struct Owned {
  char* s = nullptr;
  ~Owned() { advt_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

// Small 6-class keyword corpus in the labeled TSV format.
std::string keyword_tsv(int per_class) {
  static const char* kLabels[6] = {"None",           "Abusive", "Political Hate",
                                   "Profane",        "Religious Hate", "Sexism"};
  std::string tsv = "id\ttext\tlabel\n";
  for (int c = 0; c < 6; ++c) {
    for (int i = 0; i < per_class; ++i) {
      tsv += "x" + std::to_string(c) + "_" + std::to_string(i);
      tsv += "\tkw" + std::to_string(c) + " kw" + std::to_string(c) + "b";
      if (i % 2) tsv += " filler";
      tsv += "\t";
      tsv += kLabels[c];
      tsv += "\n";
    }
  }
  return tsv;
}

advt_train_options fast_options() {
  advt_train_options o;
  advt_train_options_init(&o);
  o.folds = 2;
  o.embed_dim = 8;
  o.hidden_dim = 8;
  o.max_len = 8;
  o.epochs = 30;
  o.batch_size = 8;
  o.learning_rate = 0.5;
  o.seed = 11;
  return o;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version string identifies the library") {
  const char* v = advt_version();
  REQUIRE(v != nullptr);
  CHECK(std::string(v).rfind("advtext ", 0) == 0);
}

TEST_CASE("normalize_text applies the default rule stack") {
  Owned out;
  CHECK(advt_normalize_text("  WoW!!!!   ok  ", nullptr, 3, &out.s) == ADVT_OK);
  CHECK(out.str() == "wow!!! ok");

  Owned subset;
  CHECK(advt_normalize_text("  WoW!!!!  ", "latin_lowercase", 3, &subset.s) == ADVT_OK);
  CHECK(subset.str() == "  wow!!!!  ");

  Owned capped;
  CHECK(advt_normalize_text("no!!!!", "punct_run_collapse", 1, &capped.s) == ADVT_OK);
  CHECK(capped.str() == "no!");
}

TEST_CASE("null arguments come back as ADVT_ERR_ARGUMENT with a message") {
  CHECK(advt_normalize_text(nullptr, nullptr, 3, nullptr) == ADVT_ERR_ARGUMENT);
  const char* err = advt_last_error();
  REQUIRE(err != nullptr);
  CHECK(std::strlen(err) > 0);

  Owned out;
  CHECK(advt_normalize_text("x", "no_such_rule", 3, &out.s) == ADVT_ERR_ARGUMENT);
  CHECK(std::string(advt_last_error()).find("no_such_rule") != std::string::npos);
}

TEST_CASE("corpus loading distinguishes IO, parse and argument failures") {
  TempDir tmp;
  advt_corpus* corpus = nullptr;

  CHECK(advt_corpus_load_tsv(tmp.file("absent.tsv").c_str(), "1a", &corpus) ==
        ADVT_ERR_IO);

  write_file(tmp.file("bad.tsv"), "id\ttext\tlabel\na\thello\tNoSuchLabel\n");
  CHECK(advt_corpus_load_tsv(tmp.file("bad.tsv").c_str(), "1a", &corpus) ==
        ADVT_ERR_PARSE);
  CHECK(std::string(advt_last_error()).find("NoSuchLabel") != std::string::npos);

  write_file(tmp.file("ok.tsv"), "id\ttext\tlabel\na\thello\tNone\n");
  CHECK(advt_corpus_load_tsv(tmp.file("ok.tsv").c_str(), "9z", &corpus) ==
        ADVT_ERR_ARGUMENT);

  CHECK(advt_corpus_load_tsv(tmp.file("ok.tsv").c_str(), "1a", &corpus) == ADVT_OK);
  REQUIRE(corpus != nullptr);
  int64_t corpus_size = 0;
  CHECK(advt_corpus_size(corpus, &corpus_size) == ADVT_OK);
  CHECK(corpus_size == 1);
  advt_corpus_free(corpus);
}

TEST_CASE("corpus normalize and serialization round-trip") {
  TempDir tmp;
  write_file(tmp.file("c.tsv"),
             "id\ttext\tlabel\n"
             "a\tHELLO!!!!! there\tNone\n"
             "b\tplain\tAbusive\n");
  advt_corpus* corpus = nullptr;
  REQUIRE(advt_corpus_load_tsv(tmp.file("c.tsv").c_str(), "1a", &corpus) == ADVT_OK);

  CHECK(advt_corpus_normalize(corpus, nullptr, 3) == ADVT_OK);
  Owned tsv;
  CHECK(advt_corpus_to_tsv(corpus, &tsv.s) == ADVT_OK);
  CHECK(tsv.str() ==
        "id\ttext\tlabel\n"
        "a\thello!!! there\tNone\n"
        "b\tplain\tAbusive\n");

  Owned dist;
  CHECK(advt_corpus_distribution_json(corpus, &dist.s) == ADVT_OK);
  CHECK(dist.str().find("\"total\": 2") != std::string::npos);
  CHECK(dist.str().find("\"task\": \"1a\"") != std::string::npos);
  advt_corpus_free(corpus);
}

TEST_CASE("vocabulary build, save and load through the C surface") {
  TempDir tmp;
  write_file(tmp.file("c.tsv"),
             "id\ttext\tlabel\n"
             "a\tred red blue\tNone\n"
             "b\tred green\tAbusive\n");
  advt_corpus* corpus = nullptr;
  REQUIRE(advt_corpus_load_tsv(tmp.file("c.tsv").c_str(), "1a", &corpus) == ADVT_OK);

  advt_vocab* vocab = nullptr;
  REQUIRE(advt_vocab_build(corpus, 1, 100, &vocab) == ADVT_OK);
  int size = 0;
  CHECK(advt_vocab_size(vocab, &size) == ADVT_OK);
  CHECK(size == 5);  // pad, unk, red, blue, green

  CHECK(advt_vocab_save(vocab, tmp.file("v.txt").c_str()) == ADVT_OK);
  advt_vocab* back = nullptr;
  REQUIRE(advt_vocab_load(tmp.file("v.txt").c_str(), &back) == ADVT_OK);
  int back_size = 0;
  CHECK(advt_vocab_size(back, &back_size) == ADVT_OK);
  CHECK(back_size == 5);

  CHECK(advt_vocab_build(corpus, 0, 100, &vocab) == ADVT_ERR_ARGUMENT);

  advt_vocab_free(vocab);
  advt_vocab_free(back);
  advt_corpus_free(corpus);
}

TEST_CASE("train, load, evaluate and predict end to end") {
  TempDir tmp;
  write_file(tmp.file("c.tsv"), keyword_tsv(12));
  const advt_train_options opts = fast_options();

  Owned report;
  REQUIRE(advt_train(tmp.file("c.tsv").c_str(), tmp.file("run").c_str(), &opts,
                     &report.s) == ADVT_OK);
  CHECK(report.str().find("\"folds\"") != std::string::npos);
  CHECK(fs::exists(tmp.path / "run" / "manifest.json"));
  CHECK(fs::exists(tmp.path / "run" / "member_1.bin"));

  advt_ensemble* ens = nullptr;
  REQUIRE(advt_ensemble_load(tmp.file("run").c_str(), &ens) == ADVT_OK);

  Owned eval_json, table;
  REQUIRE(advt_evaluate(ens, tmp.file("c.tsv").c_str(), -1, &eval_json.s,
                        &table.s) == ADVT_OK);
  CHECK(eval_json.str().find("\"micro_f1\"") != std::string::npos);
  CHECK(table.str().find("micro-F1") != std::string::npos);

  write_file(tmp.file("in.tsv"), "id\ttext\np1\tkw2 kw2b\n");
  Owned pred;
  REQUIRE(advt_predict_tsv(ens, tmp.file("in.tsv").c_str(), -1, &pred.s) == ADVT_OK);
  CHECK(pred.str().rfind("id\tlabel\tprobability\n", 0) == 0);
  CHECK(pred.str().find("p1\tPolitical Hate\t") != std::string::npos);

  // Rerunning the recorded manifest reproduces the member files.
  Owned report2;
  REQUIRE(advt_train_from_manifest((tmp.path / "run" / "manifest.json").string().c_str(),
                                   tmp.file("redo").c_str(), 1, &report2.s) == ADVT_OK);
  CHECK(report2.str() == report.str());

  std::ifstream a(tmp.path / "run" / "member_0.bin", std::ios::binary);
  std::ifstream b(tmp.path / "redo" / "member_0.bin", std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);

  advt_ensemble_free(ens);
}

TEST_CASE("training failures map onto the status enum") {
  TempDir tmp;
  write_file(tmp.file("c.tsv"), keyword_tsv(8));

  advt_train_options bad = fast_options();
  bad.fgsm_schedule = "occasionally";
  CHECK(advt_train(tmp.file("c.tsv").c_str(), tmp.file("r1").c_str(), &bad, nullptr) ==
        ADVT_ERR_ARGUMENT);
  CHECK(std::string(advt_last_error()).find("occasionally") != std::string::npos);

  // Identical texts with contradicting labels cannot all be fit, so an
  // absurd learning rate is guaranteed to blow the weights up.
  std::string conflict = "id\ttext\tlabel\n";
  for (int i = 0; i < 8; ++i) {
    conflict += "p" + std::to_string(i) + "\tclash clash\tNone\n";
    conflict += "q" + std::to_string(i) + "\tclash clash\tAbusive\n";
  }
  write_file(tmp.file("conflict.tsv"), conflict);
  advt_train_options diverge = fast_options();
  diverge.learning_rate = 1e307;
  diverge.epochs = 40;
  CHECK(advt_train(tmp.file("conflict.tsv").c_str(), tmp.file("r2").c_str(), &diverge,
                   nullptr) == ADVT_ERR_DIVERGENCE);
  CHECK(std::string(advt_last_error()).find("diverged") != std::string::npos);

  CHECK(advt_train(tmp.file("nope.tsv").c_str(), tmp.file("r3").c_str(), &bad,
                   nullptr) == ADVT_ERR_ARGUMENT);  // bad schedule still first

  advt_train_options ok = fast_options();
  CHECK(advt_train(tmp.file("nope.tsv").c_str(), tmp.file("r4").c_str(), &ok,
                   nullptr) == ADVT_ERR_IO);

  advt_ensemble* ens = nullptr;
  CHECK(advt_ensemble_load(tmp.file("r2").c_str(), &ens) == ADVT_ERR_IO);
}

}  // TEST_SUITE
