#include "advt/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "advt/errors.hpp"
#include "advt/format.hpp"

namespace advt {

ConfusionMatrix ConfusionMatrix::zeros(int class_count) {
  if (class_count < 1) throw ArgumentError("confusion matrix needs at least one class");
  ConfusionMatrix cm;
  cm.class_count = class_count;
  cm.cells.assign(static_cast<size_t>(class_count) * static_cast<size_t>(class_count), 0);
  return cm;
}

int64_t& ConfusionMatrix::at(int gold, int pred) {
  return cells.at(static_cast<size_t>(gold) * static_cast<size_t>(class_count) +
                  static_cast<size_t>(pred));
}

int64_t ConfusionMatrix::at(int gold, int pred) const {
  return cells.at(static_cast<size_t>(gold) * static_cast<size_t>(class_count) +
                  static_cast<size_t>(pred));
}

int64_t ConfusionMatrix::total() const {
  int64_t t = 0;
  for (int64_t c : cells) t += c;
  return t;
}

int64_t ConfusionMatrix::trace() const {
  int64_t t = 0;
  for (int i = 0; i < class_count; ++i) t += at(i, i);
  return t;
}

int64_t ConfusionMatrix::row_sum(int gold) const {
  int64_t t = 0;
  for (int p = 0; p < class_count; ++p) t += at(gold, p);
  return t;
}

int64_t ConfusionMatrix::col_sum(int pred) const {
  int64_t t = 0;
  for (int g = 0; g < class_count; ++g) t += at(g, pred);
  return t;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (class_count != other.class_count) {
    throw ArgumentError("confusion matrix size mismatch");
  }
  for (size_t i = 0; i < cells.size(); ++i) cells[i] += other.cells[i];
  return *this;
}

ConfusionMatrix confusion(const std::vector<int>& golds, const std::vector<int>& preds,
                          const LabelSchema& schema) {
  if (golds.size() != preds.size()) {
    throw ArgumentError("confusion: " + std::to_string(golds.size()) + " gold labels vs " +
                        std::to_string(preds.size()) + " predictions");
  }
  ConfusionMatrix cm = ConfusionMatrix::zeros(schema.class_count());
  for (size_t i = 0; i < golds.size(); ++i) {
    const int g = golds[i];
    const int p = preds[i];
    if (g < 0 || g >= cm.class_count || p < 0 || p >= cm.class_count) {
      throw ArgumentError("confusion: label out of range at index " + std::to_string(i));
    }
    ++cm.at(g, p);
  }
  return cm;
}

double micro_f1(const ConfusionMatrix& cm) {
  const int64_t total = cm.total();
  if (total == 0) throw ArgumentError("micro_f1: empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

std::vector<std::optional<double>> per_class_tpr(const ConfusionMatrix& cm) {
  std::vector<std::optional<double>> tpr(static_cast<size_t>(cm.class_count));
  for (int g = 0; g < cm.class_count; ++g) {
    const int64_t row = cm.row_sum(g);
    if (row > 0) {
      tpr[static_cast<size_t>(g)] = static_cast<double>(cm.at(g, g)) / static_cast<double>(row);
    }
  }
  return tpr;
}

std::vector<ConfusionCell> top_confusions(const ConfusionMatrix& cm, int n) {
  if (n < 1) throw ArgumentError("top_confusions: n must be >= 1");
  std::vector<ConfusionCell> cells;
  for (int g = 0; g < cm.class_count; ++g) {
    for (int p = 0; p < cm.class_count; ++p) {
      if (g != p && cm.at(g, p) > 0) cells.push_back({g, p, cm.at(g, p)});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const ConfusionCell& a, const ConfusionCell& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.gold != b.gold) return a.gold < b.gold;
    return a.pred < b.pred;
  });
  if (cells.size() > static_cast<size_t>(n)) cells.resize(static_cast<size_t>(n));
  return cells;
}

EvalReport report_from_confusion(const ConfusionMatrix& cm) {
  EvalReport report;
  report.confusion = cm;
  report.micro_f1 = micro_f1(cm);
  report.tpr = per_class_tpr(cm);
  report.recall = report.tpr;
  const size_t C = static_cast<size_t>(cm.class_count);
  report.precision.resize(C);
  report.f1.resize(C);
  report.support.resize(C);
  for (int c = 0; c < cm.class_count; ++c) {
    const size_t i = static_cast<size_t>(c);
    report.support[i] = cm.row_sum(c);
    const int64_t col = cm.col_sum(c);
    if (col > 0) {
      report.precision[i] = static_cast<double>(cm.at(c, c)) / static_cast<double>(col);
    }
    if (report.precision[i] && report.recall[i]) {
      const double p = *report.precision[i];
      const double r = *report.recall[i];
      if (p + r > 0.0) report.f1[i] = 2.0 * p * r / (p + r);
    }
  }
  return report;
}

EvalReport evaluate_predictions(const std::vector<int>& golds, const std::vector<int>& preds,
                                const LabelSchema& schema) {
  return report_from_confusion(confusion(golds, preds, schema));
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string report_to_json(const EvalReport& report, const LabelSchema& schema,
                           int top_confusion_count) {
  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < schema.class_count(); ++c) {
    const size_t i = static_cast<size_t>(c);
    classes.push_back({{"name", schema.name(c)},
                       {"tpr", opt_json(report.tpr[i])},
                       {"precision", opt_json(report.precision[i])},
                       {"recall", opt_json(report.recall[i])},
                       {"f1", opt_json(report.f1[i])},
                       {"support", report.support[i]}});
  }
  nlohmann::json confusion_rows = nlohmann::json::array();
  for (int g = 0; g < report.confusion.class_count; ++g) {
    nlohmann::json row = nlohmann::json::array();
    for (int p = 0; p < report.confusion.class_count; ++p) {
      row.push_back(report.confusion.at(g, p));
    }
    confusion_rows.push_back(row);
  }
  nlohmann::json top = nlohmann::json::array();
  for (const auto& cell : top_confusions(report.confusion, top_confusion_count)) {
    top.push_back({{"gold", schema.name(cell.gold)},
                   {"pred", schema.name(cell.pred)},
                   {"count", cell.count}});
  }
  nlohmann::json j{{"micro_f1", report.micro_f1},
                   {"classes", classes},
                   {"confusion", confusion_rows},
                   {"top_confusions", top}};
  return j.dump(2);
}

std::string report_to_table(const EvalReport& report, const LabelSchema& schema) {
  std::ostringstream out;
  size_t name_width = 5;
  for (const auto& n : schema.names()) name_width = std::max(name_width, n.size());

  auto pct = [](const std::optional<double>& v) -> std::string {
    return v ? format_percent(*v) : std::string("-");
  };

  out << std::left << std::setw(static_cast<int>(name_width + 2)) << "class" << std::right
      << std::setw(9) << "support" << std::setw(9) << "tpr%" << std::setw(9) << "prec%"
      << std::setw(9) << "recall%" << std::setw(9) << "f1%" << '\n';
  for (int c = 0; c < schema.class_count(); ++c) {
    const size_t i = static_cast<size_t>(c);
    out << std::left << std::setw(static_cast<int>(name_width + 2)) << schema.name(c) << std::right
        << std::setw(9) << report.support[i] << std::setw(9) << pct(report.tpr[i]) << std::setw(9)
        << pct(report.precision[i]) << std::setw(9) << pct(report.recall[i]) << std::setw(9)
        << pct(report.f1[i]) << '\n';
  }
  out << "micro-F1: " << format_percent(report.micro_f1) << "% (" << report.confusion.trace()
      << "/" << report.confusion.total() << ")\n";
  return out.str();
}

}  // namespace advt
