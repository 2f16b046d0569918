#include "advt/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "advt/errors.hpp"
#include "advt/normalizer.hpp"
#include "advt/utf8.hpp"

namespace advt {

Vocabulary::Vocabulary() : id_to_token_{kPadToken, kUnkToken} {}

int Vocabulary::lookup(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnk : it->second;
}

void Vocabulary::add_token(const std::string& token) {
  if (token.empty()) throw ArgumentError("vocabulary token must be non-empty");
  if (token == kPadToken || token == kUnkToken || token_to_id_.count(token)) {
    throw ArgumentError("duplicate vocabulary token: \"" + token + "\"");
  }
  const int id = size();
  id_to_token_.push_back(token);
  token_to_id_.emplace(token, id);
}

std::string Vocabulary::to_text() const {
  std::string out;
  for (const auto& token : id_to_token_) {
    out += token;
    out += '\n';
  }
  return out;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_text();
  if (!out) throw IoError("write failure on " + path);
}

Vocabulary Vocabulary::from_text(std::string_view content, const std::string& source) {
  if (!utf8_valid(content)) throw ParseError(source + ": non-UTF-8 bytes");
  Vocabulary vocab;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < content.size()) {
    size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    const std::string_view line = content.substr(pos, nl - pos);
    ++line_no;
    if (line_no == 1 || line_no == 2) {
      const char* expected = line_no == 1 ? kPadToken : kUnkToken;
      if (line != expected) {
        throw ParseError(source + ": line " + std::to_string(line_no) + " must be the reserved \"" +
                         expected + "\" entry");
      }
    } else {
      for (char32_t cp : utf8_decode(line)) {
        if (is_whitespace_char(cp)) {
          throw ParseError(source + ": whitespace inside token at line " + std::to_string(line_no));
        }
      }
      if (line.empty()) {
        throw ParseError(source + ": empty token at line " + std::to_string(line_no));
      }
      try {
        vocab.add_token(std::string(line));
      } catch (const ArgumentError& e) {
        throw ParseError(source + ": " + e.what() + " at line " + std::to_string(line_no));
      }
    }
    pos = nl + 1;
  }
  if (line_no < 2) throw ParseError(source + ": missing reserved header lines");
  return vocab;
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return from_text(buf.str(), path);
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string cps = utf8_decode(text);
  std::u32string current;
  for (char32_t cp : cps) {
    if (is_whitespace_char(cp)) {
      if (!current.empty()) {
        tokens.push_back(utf8_encode(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(utf8_encode(current));
  return tokens;
}

Vocabulary build_vocab(const std::vector<LabeledExample>& corpus, int min_freq, int max_size) {
  if (min_freq < 1) throw ArgumentError("build_vocab: min_freq must be >= 1");
  if (max_size < 3) {
    throw ArgumentError("build_vocab: max_size must be >= 3 (room for <pad>, <unk> and a token)");
  }

  std::unordered_map<std::string, int64_t> freq;
  for (const auto& ex : corpus) {
    for (auto& token : split_tokens(ex.raw_text)) {
      ++freq[std::move(token)];
    }
  }

  std::vector<std::pair<std::string, int64_t>> kept;
  kept.reserve(freq.size());
  for (auto& [token, count] : freq) {
    // Literal "<pad>"/"<unk>" in text can never become regular entries;
    // lookup maps them to kUnk by design.
    if (token == Vocabulary::kPadToken || token == Vocabulary::kUnkToken) continue;
    if (count >= min_freq) kept.emplace_back(token, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocabulary vocab;
  const size_t limit = static_cast<size_t>(max_size) - 2;
  for (size_t i = 0; i < kept.size() && i < limit; ++i) {
    vocab.add_token(kept[i].first);
  }
  return vocab;
}

int EncodedExample::token_count() const {
  int n = 0;
  for (uint8_t m : mask) n += m;
  return n;
}

EncodedExample encode(std::string_view text, const Vocabulary& vocab, int max_len, int label) {
  if (max_len < 1) throw ArgumentError("encode: max_len must be >= 1");
  EncodedExample ex;
  ex.label = label;
  ex.ids.assign(static_cast<size_t>(max_len), Vocabulary::kPad);
  ex.mask.assign(static_cast<size_t>(max_len), 0);
  const auto tokens = split_tokens(text);
  const size_t n = std::min(tokens.size(), static_cast<size_t>(max_len));
  for (size_t i = 0; i < n; ++i) {
    ex.ids[i] = vocab.lookup(tokens[i]);
    ex.mask[i] = 1;
  }
  return ex;
}

std::vector<EncodedExample> encode_corpus(const std::vector<LabeledExample>& corpus,
                                          const Vocabulary& vocab, int max_len) {
  std::vector<EncodedExample> out;
  out.reserve(corpus.size());
  for (const auto& ex : corpus) {
    out.push_back(encode(ex.raw_text, vocab, max_len, ex.label));
  }
  return out;
}

std::vector<std::string> decode(const EncodedExample& example, const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  for (size_t i = 0; i < example.ids.size(); ++i) {
    if (!example.mask[i]) break;  // real tokens are a prefix
    tokens.push_back(vocab.token(example.ids[i]));
  }
  return tokens;
}

}  // namespace advt
