#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advt/schema.hpp"

namespace advt {

/// Row = gold class, column = predicted class.
struct ConfusionMatrix {
  int class_count = 0;
  std::vector<int64_t> cells;  // class_count x class_count, row-major

  static ConfusionMatrix zeros(int class_count);

  int64_t& at(int gold, int pred);
  int64_t at(int gold, int pred) const;
  int64_t total() const;
  int64_t trace() const;
  int64_t row_sum(int gold) const;
  int64_t col_sum(int pred) const;

  /// Entrywise sum; operands must agree on class_count.
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

ConfusionMatrix confusion(const std::vector<int>& golds, const std::vector<int>& preds,
                          const LabelSchema& schema);

/// Micro-averaged F1. Under single-label multi-class scoring every
/// misclassification is one FP and one FN, so this equals trace/total
/// (= accuracy); the unit tests keep the explicit 2TP/(2TP+FP+FN) route
/// as an independent check.
double micro_f1(const ConfusionMatrix& cm);

/// Per-class recall, diagonal over gold row sum. Classes with no gold
/// examples report nullopt, not 0.
std::vector<std::optional<double>> per_class_tpr(const ConfusionMatrix& cm);

struct ConfusionCell {
  int gold = 0;
  int pred = 0;
  int64_t count = 0;
  bool operator==(const ConfusionCell&) const = default;
};

/// Nonzero off-diagonal cells, largest count first, ties by (gold, pred)
/// index order; at most n entries. n must be >= 1.
std::vector<ConfusionCell> top_confusions(const ConfusionMatrix& cm, int n);

struct EvalReport {
  double micro_f1 = 0.0;
  std::vector<std::optional<double>> tpr;
  std::vector<std::optional<double>> precision;
  std::vector<std::optional<double>> recall;
  std::vector<std::optional<double>> f1;
  std::vector<int64_t> support;  // gold row sums
  ConfusionMatrix confusion;
};

EvalReport evaluate_predictions(const std::vector<int>& golds, const std::vector<int>& preds,
                                const LabelSchema& schema);
EvalReport report_from_confusion(const ConfusionMatrix& cm);

/// {"micro_f1", "classes": [...], "confusion": [[...]], "top_confusions": [...]}
std::string report_to_json(const EvalReport& report, const LabelSchema& schema,
                           int top_confusion_count = 10);

/// Fixed-width per-class table with half-up 2-decimal percentages.
std::string report_to_table(const EvalReport& report, const LabelSchema& schema);

}  // namespace advt
