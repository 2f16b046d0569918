#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advt/schema.hpp"

namespace advt {

/// The fixed rule inventory, applied in this order. Each rule is a pure
/// string rewrite; disabling one never changes what the others do.
///
///  1. unicode_nfc        — canonical composition over the Bengali block.
///     Collapses decomposed nukta/vowel-sign spellings (e.g. U+09A1 U+09BC
///     -> U+09DC) so homograph spellings share one vocabulary entry. The
///     script-specific composites that stock NFC leaves decomposed are
///     composed here too; that is the whole point of the rule.
///  2. strip_invisible    — removes U+200B, U+FEFF, U+00AD and non-whitespace
///     control characters. U+200C/U+200D stay: ZWNJ/ZWJ are orthographically
///     meaningful inside Bangla conjuncts.
///  3. whitespace_collapse — trims the ends and collapses every whitespace
///     run to a single U+0020.
///  4. latin_lowercase    — lowercases Latin letters (ASCII and Latin-1
///     supplement). Bangla has no case, so only code-mixed segments change.
///  5. punct_run_collapse — caps runs of one repeated punctuation character
///     at max_punct_run.
///  6. digit_preserve     — explicit no-op: Bangla digits are NOT folded to
///     ASCII. Kept in the inventory so the policy is visible and togglable
///     in configs and reports.
enum class Rule : uint8_t {
  kUnicodeNfc = 0,
  kStripInvisible,
  kWhitespaceCollapse,
  kLatinLowercase,
  kPunctRunCollapse,
  kDigitPreserve,
};

inline constexpr int kRuleCount = 6;

const char* rule_name(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);

struct NormalizerConfig {
  std::array<bool, kRuleCount> rules_enabled{true, true, true, true, true, true};
  int max_punct_run = 3;

  static NormalizerConfig all() { return NormalizerConfig{}; }
  static NormalizerConfig none();
  /// Comma-separated rule names; unknown names raise ArgumentError.
  static NormalizerConfig from_rules_csv(std::string_view csv, int max_punct_run = 3);

  bool enabled(Rule rule) const { return rules_enabled[static_cast<size_t>(rule)]; }
  void set(Rule rule, bool on) { rules_enabled[static_cast<size_t>(rule)] = on; }
  std::string rules_csv() const;
  void validate() const;
};

/// Runs the enabled rules in the fixed order, repeating the pass until the
/// text stops changing. The repeat is what makes normalize idempotent even
/// when one rule uncovers work for an earlier one (stripping an invisible
/// character can make a composable pair adjacent).
std::string normalize(std::string_view text, const NormalizerConfig& config = NormalizerConfig::all());

/// Maps normalize over raw_text; ids, labels and order are untouched.
std::vector<LabeledExample> normalize_corpus(std::vector<LabeledExample> examples,
                                             const NormalizerConfig& config = NormalizerConfig::all());

// Character classes the rules are defined over, exposed for the tokenizer
// and for tests.
bool is_whitespace_char(char32_t cp);
bool is_punct_char(char32_t cp);

}  // namespace advt
