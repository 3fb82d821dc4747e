#include "nlgbidi/serde.hpp"

#include <json.hpp>
#include <stdexcept>
#include <vector>

#include "nlgbidi/error.hpp"

namespace nlgbidi {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

TaskTag parse_task_tag(std::string_view name) {
  if (name == "d2s") return TaskTag(TaskKind::D2S);
  if (name == "s2d") return TaskTag(TaskKind::S2D);
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

std::string serialize_triple(const Triple& t) {
  std::string out;
  out.reserve(t.subject.canonical().size() + t.relation.canonical().size() +
              t.object.canonical().size() + 8);
  out += t.subject.canonical();
  out += " | ";
  out += t.relation.canonical();
  out += " | ";
  out += t.object.canonical();
  out += " ;";
  return out;
}

std::string serialize_triples(const TripleSet& ts) {
  if (ts.empty()) throw Error(Errc::EmptyTripleSet, "cannot serialize an empty triple set");
  std::string out;
  for (const auto& t : ts) {
    if (!out.empty()) out.push_back(' ');
    out += serialize_triple(t);
  }
  return out;
}

std::string_view strip_task_prefix(std::string_view text) noexcept {
  std::string_view t = trim(text);
  for (TaskTag tag : {TaskTag(TaskKind::D2S), TaskTag(TaskKind::S2D)}) {
    if (t.starts_with(tag.prefix())) return trim(t.substr(tag.prefix().size()));
  }
  return t;
}

TripleSet parse_triples(std::string_view flat) {
  std::string_view body = strip_task_prefix(flat);
  TripleSet out;
  auto segments = split_on(body, ';');
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::string_view segment = trim(segments[i]);
    if (segment.empty()) continue;
    auto terms = split_on(segment, '|');
    if (terms.size() != 3) throw MalformedTriple(std::string(segment), i);
    try {
      out.push_back(Triple{canonicalize_term(terms[0]), canonicalize_term(terms[1]),
                           canonicalize_term(terms[2])});
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyTerm) throw;
      throw MalformedTriple(std::string(segment), i);
    }
  }
  if (out.empty()) throw Error(Errc::EmptyOutput, "no triple could be recovered");
  return out;
}

TaskExample make_task_example(const Record& r, TaskTag task, std::size_t ref_index,
                              bool with_prefix) {
  if (ref_index >= r.references.size()) {
    throw Error(Errc::ReferenceIndexOutOfRange,
                "reference " + std::to_string(ref_index) + " requested, record " +
                    std::to_string(r.id) + " has " + std::to_string(r.references.size()));
  }
  std::string data = serialize_triples(r.triples);
  std::string sentence = canonical_text(r.references[ref_index]);

  TaskExample ex{task, {}, {}, r.id};
  if (task.kind() == TaskKind::D2S) {
    ex.input = std::move(data);
    ex.target = std::move(sentence);
  } else {
    ex.input = std::move(sentence);
    ex.target = std::move(data);
  }
  if (with_prefix) ex.input = std::string(task.prefix()) + " " + ex.input;
  return ex;
}

std::string task_example_to_json_line(const TaskExample& ex) {
  nlohmann::ordered_json j = {{"task", ex.task.name()},
                              {"input", ex.input},
                              {"target", ex.target},
                              {"record_id", ex.record_id}};
  return j.dump();
}

TaskExample task_example_from_json_line(std::string_view line, std::size_t line_no) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(line_no, "<json>", e.what());
  }
  auto str = [&](const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) throw SchemaViolation(line_no, name, "expected a string");
    return it->get<std::string>();
  };
  TaskExample ex;
  try {
    ex.task = parse_task_tag(str("task"));
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(line_no, "task", e.what());
  }
  ex.input = str("input");
  ex.target = str("target");
  auto id = j.find("record_id");
  if (id == j.end() || !id->is_number_unsigned()) {
    throw SchemaViolation(line_no, "record_id", "expected a non-negative integer");
  }
  ex.record_id = id->get<std::uint64_t>();
  return ex;
}

}  // namespace nlgbidi
