#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "advt/normalizer.hpp"
#include "advt/schema.hpp"

namespace advt {

struct LoadOptions {
  bool allow_empty_text = false;
};

/// Loads the corpus TSV format: UTF-8, LF line endings, header row
/// "id<TAB>text<TAB>label", then exactly three tab-separated fields per
/// line. A fourth field means a tab inside the text and is rejected.
/// Label names resolve against the schema by exact string match.
/// ParseError messages carry the file name and 1-based line number.
std::vector<LabeledExample> load_tsv(const std::string& path, const LabelSchema& schema,
                                     const LoadOptions& options = {});

/// Same parser over an already-read buffer; `source` names it in errors.
std::vector<LabeledExample> parse_tsv(std::string_view content, const LabelSchema& schema,
                                      const LoadOptions& options, const std::string& source);

/// The corpus TSV format, written back out (header plus one line per
/// example). Texts never contain tabs or newlines — the parser rejects
/// them — so the round trip is lossless.
std::string to_tsv(const std::vector<LabeledExample>& examples, const LabelSchema& schema);

/// A row of text to classify: the 2-column prediction input format.
struct UnlabeledExample {
  std::string id;
  std::string raw_text;
};

/// Prediction input TSV: header "id<TAB>text", exactly two fields per
/// line, same strictness as the labeled format. Empty text is allowed
/// (it encodes to an all-PAD example).
std::vector<UnlabeledExample> load_unlabeled_tsv(const std::string& path);
std::vector<UnlabeledExample> parse_unlabeled_tsv(std::string_view content,
                                                  const std::string& source);

/// Per-class counts and fractions of a labeled corpus.
struct DistributionReport {
  std::vector<int64_t> counts;  // indexed by class
  int64_t total = 0;

  double fraction(int c) const {
    return total == 0 ? 0.0 : static_cast<double>(counts.at(static_cast<size_t>(c))) /
                                  static_cast<double>(total);
  }
  /// {"task": ..., "total": ..., "classes": [{"name","count","percent"}]}
  /// with percent half-up rounded to 2 decimals.
  std::string to_json(const LabelSchema& schema) const;
};

DistributionReport distribution(const std::vector<LabeledExample>& examples,
                                const LabelSchema& schema);

/// Concatenates primary and extra, dropping extras that duplicate an
/// already-seen example. Two examples are duplicates when their labels
/// match and their texts normalize to the same string. Primary examples
/// are always kept; surviving extras follow in their own order.
std::vector<LabeledExample> merge_corpora(const std::vector<LabeledExample>& primary,
                                          const std::vector<LabeledExample>& extra,
                                          const LabelSchema& schema,
                                          const NormalizerConfig& dedup_config = NormalizerConfig::all());

/// Stratified fold assignment: one fold index per example.
struct FoldPlan {
  int k = 0;
  uint64_t seed = 0;
  std::vector<int> assignment;

  std::vector<int64_t> fold_sizes() const;
  bool operator==(const FoldPlan&) const = default;
};

/// Groups examples by class, shuffles each group with SplitMix64(seed)
/// (classes in ascending label order share one generator stream), then
/// deals all examples onto folds through a single running cursor. That
/// bounds the per-class and the overall fold-size imbalance by 1, and
/// pins the plan to (dataset order, k, seed) exactly.
FoldPlan stratified_kfold(const std::vector<LabeledExample>& examples, int k, uint64_t seed);

}  // namespace advt
