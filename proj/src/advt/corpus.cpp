#include "advt/corpus.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "advt/errors.hpp"
#include "advt/format.hpp"
#include "advt/rng.hpp"
#include "advt/utf8.hpp"

namespace advt {

namespace {

constexpr const char* kHeader = "id\ttext\tlabel";
constexpr const char* kUnlabeledHeader = "id\ttext";

std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < content.size()) {
    size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(content.substr(pos));
      break;
    }
    lines.push_back(content.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

[[noreturn]] void fail(const std::string& source, size_t line_no, const std::string& what) {
  throw ParseError(source + ": " + what + " at line " + std::to_string(line_no));
}

}  // namespace

std::vector<LabeledExample> parse_tsv(std::string_view content, const LabelSchema& schema,
                                      const LoadOptions& options, const std::string& source) {
  const auto lines = split_lines(content);
  if (lines.empty()) {
    throw ParseError(source + ": empty file, expected header \"" + kHeader + "\"");
  }
  if (!utf8_valid(lines[0])) fail(source, 1, "non-UTF-8 bytes");
  if (lines[0] != kHeader) {
    fail(source, 1, "bad header (expected \"id<TAB>text<TAB>label\")");
  }

  std::vector<LabeledExample> examples;
  examples.reserve(lines.size() - 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (!utf8_valid(line)) fail(source, line_no, "non-UTF-8 bytes");
    if (line.find('\r') != std::string_view::npos) {
      fail(source, line_no, "carriage return (file must use LF line endings)");
    }

    const size_t t1 = line.find('\t');
    if (t1 == std::string_view::npos) fail(source, line_no, "expected 3 tab-separated fields, got 1");
    const size_t t2 = line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) fail(source, line_no, "expected 3 tab-separated fields, got 2");
    if (line.find('\t', t2 + 1) != std::string_view::npos) {
      fail(source, line_no, "more than 3 fields (tab inside text?)");
    }

    LabeledExample ex;
    ex.id = std::string(line.substr(0, t1));
    ex.raw_text = std::string(line.substr(t1 + 1, t2 - t1 - 1));
    const std::string_view label_name = line.substr(t2 + 1);
    if (ex.raw_text.empty() && !options.allow_empty_text) {
      fail(source, line_no, "empty text");
    }
    const auto label = schema.index_of(label_name);
    if (!label) {
      fail(source, line_no, "unknown label \"" + std::string(label_name) + "\"");
    }
    ex.label = *label;
    examples.push_back(std::move(ex));
  }
  return examples;
}

std::vector<LabeledExample> load_tsv(const std::string& path, const LabelSchema& schema,
                                     const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return parse_tsv(buf.str(), schema, options, path);
}

std::string to_tsv(const std::vector<LabeledExample>& examples, const LabelSchema& schema) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& ex : examples) {
    if (ex.label < 0 || ex.label >= schema.class_count()) {
      throw ArgumentError("to_tsv: label " + std::to_string(ex.label) + " out of range for task " +
                          schema.task_name());
    }
    out += ex.id;
    out += '\t';
    out += ex.raw_text;
    out += '\t';
    out += schema.name(ex.label);
    out += '\n';
  }
  return out;
}

std::vector<UnlabeledExample> parse_unlabeled_tsv(std::string_view content,
                                                  const std::string& source) {
  const auto lines = split_lines(content);
  if (lines.empty()) {
    throw ParseError(source + ": empty file, expected header \"" + kUnlabeledHeader + "\"");
  }
  if (!utf8_valid(lines[0])) fail(source, 1, "non-UTF-8 bytes");
  if (lines[0] != kUnlabeledHeader) {
    fail(source, 1, "bad header (expected \"id<TAB>text\")");
  }

  std::vector<UnlabeledExample> rows;
  rows.reserve(lines.size() - 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (!utf8_valid(line)) fail(source, line_no, "non-UTF-8 bytes");
    if (line.find('\r') != std::string_view::npos) {
      fail(source, line_no, "carriage return (file must use LF line endings)");
    }

    const size_t t1 = line.find('\t');
    if (t1 == std::string_view::npos) fail(source, line_no, "expected 2 tab-separated fields, got 1");
    if (line.find('\t', t1 + 1) != std::string_view::npos) {
      fail(source, line_no, "more than 2 fields (tab inside text?)");
    }

    rows.push_back({std::string(line.substr(0, t1)), std::string(line.substr(t1 + 1))});
  }
  return rows;
}

std::vector<UnlabeledExample> load_unlabeled_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return parse_unlabeled_tsv(buf.str(), path);
}

DistributionReport distribution(const std::vector<LabeledExample>& examples,
                                const LabelSchema& schema) {
  DistributionReport report;
  report.counts.assign(static_cast<size_t>(schema.class_count()), 0);
  for (const auto& ex : examples) {
    if (ex.label < 0 || ex.label >= schema.class_count()) {
      throw ArgumentError("label " + std::to_string(ex.label) + " out of range for task " +
                          schema.task_name());
    }
    ++report.counts[static_cast<size_t>(ex.label)];
  }
  report.total = static_cast<int64_t>(examples.size());
  return report;
}

std::string DistributionReport::to_json(const LabelSchema& schema) const {
  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < schema.class_count(); ++c) {
    const int64_t count = counts.at(static_cast<size_t>(c));
    classes.push_back({{"name", schema.name(c)},
                       {"count", count},
                       {"percent", total == 0 ? 0.0 : percent_value(count, total)}});
  }
  nlohmann::json j{{"task", schema.task_name()}, {"total", total}, {"classes", classes}};
  return j.dump(2);
}

std::vector<LabeledExample> merge_corpora(const std::vector<LabeledExample>& primary,
                                          const std::vector<LabeledExample>& extra,
                                          const LabelSchema& schema,
                                          const NormalizerConfig& dedup_config) {
  std::set<std::pair<std::string, int>> seen;
  std::vector<LabeledExample> merged;
  merged.reserve(primary.size() + extra.size());
  auto check_label = [&](const LabeledExample& ex) {
    if (ex.label < 0 || ex.label >= schema.class_count()) {
      throw ArgumentError("merge_corpora: label " + std::to_string(ex.label) +
                          " out of range for task " + schema.task_name() + " (schema mismatch?)");
    }
  };
  for (const auto& ex : primary) {
    check_label(ex);
    seen.emplace(normalize(ex.raw_text, dedup_config), ex.label);
    merged.push_back(ex);
  }
  for (const auto& ex : extra) {
    check_label(ex);
    if (seen.emplace(normalize(ex.raw_text, dedup_config), ex.label).second) {
      merged.push_back(ex);
    }
  }
  return merged;
}

std::vector<int64_t> FoldPlan::fold_sizes() const {
  std::vector<int64_t> sizes(static_cast<size_t>(k), 0);
  for (int f : assignment) ++sizes[static_cast<size_t>(f)];
  return sizes;
}

FoldPlan stratified_kfold(const std::vector<LabeledExample>& examples, int k, uint64_t seed) {
  if (k < 2) throw ArgumentError("stratified_kfold: k must be >= 2, got " + std::to_string(k));
  if (static_cast<size_t>(k) > examples.size()) {
    throw ArgumentError("stratified_kfold: k=" + std::to_string(k) + " exceeds dataset size " +
                        std::to_string(examples.size()));
  }

  // class label -> member indices in dataset order
  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].label < 0) throw ArgumentError("stratified_kfold: negative label");
    by_class[examples[i].label].push_back(i);
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(examples.size(), 0);

  SplitMix64 rng(seed);
  size_t cursor = 0;
  for (auto& [label, members] : by_class) {
    deterministic_shuffle(members, rng);
    for (size_t idx : members) {
      plan.assignment[idx] = static_cast<int>(cursor % static_cast<size_t>(k));
      ++cursor;
    }
  }
  return plan;
}

}  // namespace advt
