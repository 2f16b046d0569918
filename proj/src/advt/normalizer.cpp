#include "advt/normalizer.hpp"

#include <algorithm>

#include "advt/errors.hpp"
#include "advt/utf8.hpp"

namespace advt {

namespace {

constexpr const char* kRuleNames[kRuleCount] = {
    "unicode_nfc",     "strip_invisible",   "whitespace_collapse",
    "latin_lowercase", "punct_run_collapse", "digit_preserve",
};

// Canonical composites of the Bengali block (UnicodeData.txt canonical
// decomposition field, inverted). 09DC/09DD/09DF are composition
// exclusions in stock NFC; they are composed here deliberately.
struct Composite {
  char32_t first;
  char32_t second;
  char32_t composed;
};
constexpr Composite kBengaliComposites[] = {
    {0x09C7, 0x09BE, 0x09CB},  // E + AA        -> O
    {0x09C7, 0x09D7, 0x09CC},  // E + AU LENGTH -> AU
    {0x09A1, 0x09BC, 0x09DC},  // DDA + NUKTA   -> RRA
    {0x09A2, 0x09BC, 0x09DD},  // DDHA + NUKTA  -> RHA
    {0x09AF, 0x09BC, 0x09DF},  // YA + NUKTA    -> YYA
};

std::optional<char32_t> compose_pair(char32_t a, char32_t b) {
  for (const auto& c : kBengaliComposites) {
    if (c.first == a && c.second == b) return c.composed;
  }
  return std::nullopt;
}

std::u32string apply_nfc(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (!out.empty()) {
      if (auto composed = compose_pair(out.back(), cp)) {
        out.back() = *composed;  // composite may pair with the next char
        continue;
      }
    }
    out.push_back(cp);
  }
  return out;
}

bool is_stripped_invisible(char32_t cp) {
  if (cp == 0x200B || cp == 0xFEFF || cp == 0x00AD) return true;
  // Non-whitespace control characters. Whitespace controls (TAB, LF, VT,
  // FF, CR, NEL) belong to whitespace_collapse and are kept here.
  if (cp < 0x20 && !is_whitespace_char(cp)) return true;
  if (cp == 0x7F) return true;
  if (cp >= 0x80 && cp <= 0x9F && cp != 0x85) return true;
  return false;
}

std::u32string apply_strip_invisible(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (!is_stripped_invisible(cp)) out.push_back(cp);
  }
  return out;
}

std::u32string apply_whitespace_collapse(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char32_t cp : s) {
    if (is_whitespace_char(cp)) {
      pending_space = !out.empty();  // leading whitespace is dropped
    } else {
      if (pending_space) out.push_back(U' ');
      pending_space = false;
      out.push_back(cp);
    }
  }
  return out;  // trailing run never flushed == trimmed
}

char32_t lowercase_latin(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 supplement uppercase, excluding the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

std::u32string apply_latin_lowercase(const std::u32string& s) {
  std::u32string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lowercase_latin);
  return out;
}

std::u32string apply_punct_run_collapse(const std::u32string& s, int max_run) {
  std::u32string out;
  out.reserve(s.size());
  int run = 0;
  for (char32_t cp : s) {
    if (is_punct_char(cp) && !out.empty() && out.back() == cp) {
      ++run;
    } else {
      run = 1;
    }
    if (!is_punct_char(cp) || run <= max_run) out.push_back(cp);
  }
  return out;
}

std::u32string run_pass(const std::u32string& s, const NormalizerConfig& config) {
  std::u32string cur(s);
  if (config.enabled(Rule::kUnicodeNfc)) cur = apply_nfc(cur);
  if (config.enabled(Rule::kStripInvisible)) cur = apply_strip_invisible(cur);
  if (config.enabled(Rule::kWhitespaceCollapse)) cur = apply_whitespace_collapse(cur);
  if (config.enabled(Rule::kLatinLowercase)) cur = apply_latin_lowercase(cur);
  if (config.enabled(Rule::kPunctRunCollapse)) {
    cur = apply_punct_run_collapse(cur, config.max_punct_run);
  }
  // digit_preserve: identity by definition.
  return cur;
}

}  // namespace

const char* rule_name(Rule rule) { return kRuleNames[static_cast<size_t>(rule)]; }

std::optional<Rule> parse_rule(std::string_view name) {
  for (int i = 0; i < kRuleCount; ++i) {
    if (name == kRuleNames[i]) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

NormalizerConfig NormalizerConfig::none() {
  NormalizerConfig config;
  config.rules_enabled.fill(false);
  return config;
}

NormalizerConfig NormalizerConfig::from_rules_csv(std::string_view csv, int max_punct_run) {
  NormalizerConfig config = none();
  config.max_punct_run = max_punct_run;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view item = csv.substr(pos, comma - pos);
    // allow surrounding spaces
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      auto rule = parse_rule(item);
      if (!rule) throw ArgumentError("unknown normalizer rule: \"" + std::string(item) + "\"");
      config.set(*rule, true);
    }
    pos = comma + 1;
  }
  config.validate();
  return config;
}

std::string NormalizerConfig::rules_csv() const {
  std::string out;
  for (int i = 0; i < kRuleCount; ++i) {
    if (!rules_enabled[static_cast<size_t>(i)]) continue;
    if (!out.empty()) out += ',';
    out += kRuleNames[i];
  }
  return out;
}

void NormalizerConfig::validate() const {
  if (max_punct_run < 1) {
    throw ArgumentError("max_punct_run must be >= 1, got " + std::to_string(max_punct_run));
  }
}

std::string normalize(std::string_view text, const NormalizerConfig& config) {
  config.validate();
  std::u32string cur = utf8_decode(text);
  // One pass almost always suffices; the loop guarantees a fixed point.
  for (int i = 0; i < 8; ++i) {
    std::u32string next = run_pass(cur, config);
    if (next == cur) break;
    cur = std::move(next);
  }
  return utf8_encode(cur);
}

std::vector<LabeledExample> normalize_corpus(std::vector<LabeledExample> examples,
                                             const NormalizerConfig& config) {
  for (auto& ex : examples) {
    ex.raw_text = normalize(ex.raw_text, config);
  }
  return examples;
}

bool is_whitespace_char(char32_t cp) {
  // Unicode White_Space property.
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct_char(char32_t cp) {
  if (cp >= 0x21 && cp <= 0x2F) return true;
  if (cp >= 0x3A && cp <= 0x40) return true;
  if (cp >= 0x5B && cp <= 0x60) return true;
  if (cp >= 0x7B && cp <= 0x7E) return true;
  if (cp == 0x0964 || cp == 0x0965) return true;     // danda, double danda
  if (cp >= 0x2010 && cp <= 0x2027) return true;     // dashes, quotes, ellipsis
  return false;
}

}  // namespace advt
