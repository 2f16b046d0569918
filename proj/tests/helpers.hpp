#pragma once

// Shared utilities for the test binaries: temp directories, file helpers,
// the fuzz string generator, and the synthetic keyword corpus that the
// end-to-end tests train on.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "advt/errors.hpp"
#include "advt/rng.hpp"
#include "advt/schema.hpp"
#include "advt/utf8.hpp"

namespace advtest {

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("advtext-test-" + std::to_string(counter.fetch_add(1)) + "-" +
             std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw advt::IoError("test: cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw advt::IoError("test: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Spec of the synthetic keyword corpus: class c's texts mix tokens
/// "kw<c>_<j>" (which only class c uses) with shared "noise_<j>" tokens,
/// so the classes are separable exactly to the degree keyword_prob says.
struct SyntheticSpec {
  int classes = 6;
  int per_class = 500;
  int keywords_per_class = 4;
  int noise_tokens = 30;
  int tokens_per_example = 8;
  double keyword_prob = 0.5;  // chance a position carries a class keyword
  uint64_t seed = 1234;
};

inline std::vector<advt::LabeledExample> synthetic_corpus(const SyntheticSpec& spec) {
  advt::SplitMix64 rng(spec.seed);
  std::vector<advt::LabeledExample> out;
  out.reserve(static_cast<size_t>(spec.classes) * static_cast<size_t>(spec.per_class));
  int id = 0;
  for (int c = 0; c < spec.classes; ++c) {
    for (int i = 0; i < spec.per_class; ++i) {
      std::string text;
      for (int t = 0; t < spec.tokens_per_example; ++t) {
        if (!text.empty()) text += ' ';
        // position 0 always carries a keyword so no text is pure noise
        if (t == 0 || rng.next_double() < spec.keyword_prob) {
          text += "kw" + std::to_string(c) + "_" +
                  std::to_string(rng.next_below(static_cast<uint64_t>(spec.keywords_per_class)));
        } else {
          text += "noise_" +
                  std::to_string(rng.next_below(static_cast<uint64_t>(spec.noise_tokens)));
        }
      }
      out.push_back({"ex" + std::to_string(id++), text, c});
    }
  }
  return out;
}

/// Serializes a synthetic corpus in the task-1a TSV format.
inline std::string synthetic_tsv(const std::vector<advt::LabeledExample>& corpus) {
  const advt::LabelSchema& schema = advt::LabelSchema::type_of_hate();
  std::string out = "id\ttext\tlabel\n";
  for (const auto& ex : corpus) {
    out += ex.id + "\t" + ex.raw_text + "\t" + schema.name(ex.label) + "\n";
  }
  return out;
}

inline std::string synthetic_tsv(const SyntheticSpec& spec) {
  return synthetic_tsv(synthetic_corpus(spec));
}

/// Random Unicode string mixing ASCII, whitespace variants, invisibles,
/// the Bangla block, Latin-1, punctuation, and a few astral codepoints.
inline std::string fuzz_string(advt::SplitMix64& rng, int max_codepoints = 40) {
  static const std::vector<char32_t> kSpecials = {
      0x200B, 0x200C, 0x200D, 0xFEFF, 0x00AD, 0x0009, 0x000A, 0x000D, 0x000B, 0x00A0,
      0x2000, 0x2028, 0x2029, 0x3000, 0x0964, 0x0965, 0x2013, 0x2018, 0x201C, 0x2026,
      0x1F600, 0x1F62D, 0x0985, 0x09BE, 0x09C7, 0x09D7, 0x09A1, 0x09A2, 0x09AF, 0x09BC,
      0x09CD, 0x0041, 0x00C0, 0x00D7, 0x0021};
  std::u32string s;
  const auto len = rng.next_below(static_cast<uint64_t>(max_codepoints) + 1);
  for (uint64_t i = 0; i < len; ++i) {
    switch (rng.next_below(5)) {
      case 0:  // printable ASCII
        s += static_cast<char32_t>(0x20 + rng.next_below(0x5F));
        break;
      case 1:  // Bangla block
        s += static_cast<char32_t>(0x0980 + rng.next_below(0x80));
        break;
      case 2:
        s += kSpecials[static_cast<size_t>(rng.next_below(kSpecials.size()))];
        break;
      case 3:  // Latin-1 supplement
        s += static_cast<char32_t>(0xA0 + rng.next_below(0x60));
        break;
      default:  // anything below the surrogate range, controls included
        s += static_cast<char32_t>(rng.next_below(0x3000));
        break;
    }
  }
  return advt::utf8_encode(s);
}

}  // namespace advtest
