#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "nlgbidi/model.hpp"

namespace nlgbidi {

enum class TaskKind { D2S, S2D };

// Control prefix selecting the task for a multi-task model.
class TaskTag {
 public:
  constexpr explicit TaskTag(TaskKind kind) noexcept : kind_(kind) {}

  constexpr TaskKind kind() const noexcept { return kind_; }
  constexpr std::string_view prefix() const noexcept {
    return kind_ == TaskKind::D2S ? "d2t 0:" : "t2d 1:";
  }
  constexpr std::string_view name() const noexcept {
    return kind_ == TaskKind::D2S ? "d2s" : "s2d";
  }

  friend constexpr bool operator==(TaskTag a, TaskTag b) noexcept { return a.kind_ == b.kind_; }

 private:
  TaskKind kind_;
};

TaskTag parse_task_tag(std::string_view name);  // "d2s" | "s2d"

struct TaskExample {
  TaskTag task{TaskKind::D2S};
  std::string input;
  std::string target;
  std::uint64_t record_id = 0;

  friend bool operator==(const TaskExample&, const TaskExample&) = default;
};

// `s | r | o ;` per triple, joined with single spaces, canonical terms.
// Throws Error(EmptyTripleSet).
std::string serialize_triples(const TripleSet& ts);
std::string serialize_triple(const Triple& t);

// Lenient inverse of serialize_triples: any spacing around '|' and ';',
// optional final ';', and a leading control prefix are accepted.
// Throws MalformedTriple (segment index counted over ';' splits) or
// Error(EmptyOutput).
TripleSet parse_triples(std::string_view flat);

// Removes a leading "d2t 0:" / "t2d 1:" and the whitespace after it.
std::string_view strip_task_prefix(std::string_view text) noexcept;

// References are normalized with canonical_text (ASCII, lowercase).
// Throws Error(ReferenceIndexOutOfRange).
TaskExample make_task_example(const Record& r, TaskTag task, std::size_t ref_index,
                              bool with_prefix);

std::string task_example_to_json_line(const TaskExample& ex);
TaskExample task_example_from_json_line(std::string_view line, std::size_t line_no);

}  // namespace nlgbidi
