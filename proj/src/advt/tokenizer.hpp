#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "advt/schema.hpp"

namespace advt {

/// Frequency-ordered whitespace-token vocabulary with two reserved ids.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr const char* kPadToken = "<pad>";
  static constexpr const char* kUnkToken = "<unk>";

  Vocabulary();

  int size() const { return static_cast<int>(id_to_token_.size()); }

  /// kUnk for anything that is not a regular (id >= 2) entry; a literal
  /// "<pad>" or "<unk>" in text is out-of-vocabulary on purpose.
  int lookup(std::string_view token) const;

  const std::string& token(int id) const { return id_to_token_.at(static_cast<size_t>(id)); }
  const std::vector<std::string>& tokens() const { return id_to_token_; }

  void add_token(const std::string& token);  // next free id; duplicates raise

  /// One token per line. Lines 1-2 are the reserved header ("<pad>",
  /// "<unk>"); the token on 0-based line n thereafter has id n + 2.
  void save(const std::string& path) const;
  std::string to_text() const;
  static Vocabulary load(const std::string& path);
  static Vocabulary from_text(std::string_view content, const std::string& source);

  bool operator==(const Vocabulary& other) const { return id_to_token_ == other.id_to_token_; }

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;  // regular tokens only
};

/// Splits on the normalizer's whitespace classes; tokens keep their exact
/// bytes. Raises ParseError on invalid UTF-8.
std::vector<std::string> split_tokens(std::string_view text);

/// Keeps whitespace tokens seen at least min_freq times, most frequent
/// first, ties broken by byte-wise token order, truncated to max_size ids
/// including the two reserved ones.
Vocabulary build_vocab(const std::vector<LabeledExample>& corpus, int min_freq, int max_size);

struct EncodedExample {
  std::vector<int> ids;        // length max_len, right-padded with kPad
  std::vector<uint8_t> mask;   // 1 where ids holds a real token
  int label = -1;              // -1 when the text is unlabeled

  int token_count() const;
};

/// Unknown tokens become kUnk; tokens beyond max_len are dropped from the
/// right. label is carried through untouched.
EncodedExample encode(std::string_view text, const Vocabulary& vocab, int max_len, int label = -1);

std::vector<EncodedExample> encode_corpus(const std::vector<LabeledExample>& corpus,
                                          const Vocabulary& vocab, int max_len);

/// Tokens of the non-PAD positions ("<unk>" where information was lost).
std::vector<std::string> decode(const EncodedExample& example, const Vocabulary& vocab);

}  // namespace advt
