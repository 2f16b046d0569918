#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace advt {

/// The two classification tasks this pipeline supports.
enum class Task {
  kTypeOfHate,   // "1a": what kind of hate a comment carries
  kTargetGroup,  // "1b": who the comment targets
};

/// Ordered class inventory of one task. Class index = position in names().
class LabelSchema {
 public:
  static const LabelSchema& type_of_hate();
  static const LabelSchema& target_group();
  static const LabelSchema& for_task(Task task);

  /// Accepts "1a" / "1b" (case-insensitive).
  static std::optional<Task> parse_task(std::string_view s);

  Task task() const { return task_; }
  const char* task_name() const;  // "1a" or "1b"
  int class_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int index) const { return names_.at(static_cast<size_t>(index)); }

  /// Exact string match; no trimming, no case folding.
  std::optional<int> index_of(std::string_view name) const;

 private:
  LabelSchema(Task task, std::vector<std::string> names);
  Task task_;
  std::vector<std::string> names_;
};

/// One comment: stable id, text as loaded (or normalized), class index.
struct LabeledExample {
  std::string id;
  std::string raw_text;
  int label = 0;
};

}  // namespace advt
