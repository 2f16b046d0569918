#include "advt/schema.hpp"

namespace advt {

LabelSchema::LabelSchema(Task task, std::vector<std::string> names)
    : task_(task), names_(std::move(names)) {}

const LabelSchema& LabelSchema::type_of_hate() {
  static const LabelSchema schema(
      Task::kTypeOfHate,
      {"None", "Abusive", "Political Hate", "Profane", "Religious Hate", "Sexism"});
  return schema;
}

const LabelSchema& LabelSchema::target_group() {
  static const LabelSchema schema(
      Task::kTargetGroup, {"None", "Individual", "Organization", "Community", "Society"});
  return schema;
}

const LabelSchema& LabelSchema::for_task(Task task) {
  return task == Task::kTypeOfHate ? type_of_hate() : target_group();
}

std::optional<Task> LabelSchema::parse_task(std::string_view s) {
  if (s == "1a" || s == "1A") return Task::kTypeOfHate;
  if (s == "1b" || s == "1B") return Task::kTargetGroup;
  return std::nullopt;
}

const char* LabelSchema::task_name() const {
  return task_ == Task::kTypeOfHate ? "1a" : "1b";
}

std::optional<int> LabelSchema::index_of(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

}  // namespace advt
