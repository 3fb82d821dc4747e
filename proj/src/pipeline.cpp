#include "nlgbidi/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <numeric>

#include "nlgbidi/error.hpp"

namespace nlgbidi {

namespace {

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

std::string describe(const SplitCounts& c) {
  return "(" + std::to_string(c.train) + ", " + std::to_string(c.validation) + ", " +
         std::to_string(c.test) + ")";
}

}  // namespace

SplitCounts Corpus::split_counts() const {
  SplitCounts c;
  for (const auto& r : records) {
    switch (r.split) {
      case Split::Train: ++c.train; break;
      case Split::Validation: ++c.validation; break;
      case Split::Test: ++c.test; break;
    }
  }
  return c;
}

Corpus Corpus::only(Split split) const {
  Corpus out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out.records),
               [&](const Record& r) { return r.split == split; });
  return out;
}

std::size_t Corpus::triple_count() const {
  return std::accumulate(records.begin(), records.end(), std::size_t{0},
                         [](std::size_t acc, const Record& r) { return acc + r.triples.size(); });
}

Corpus read_corpus(std::istream& in, const std::optional<SplitCounts>& expected) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    corpus.records.push_back(parse_record_line(line, line_no));
  }
  if (in.bad()) throw Error(Errc::IoFailure, "read error after line " + std::to_string(line_no));
  if (expected) {
    SplitCounts actual = corpus.split_counts();
    if (actual != *expected) {
      throw Error(Errc::SplitCountMismatch,
                  "split counts " + describe(actual) + " differ from expected " + describe(*expected));
    }
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const std::optional<SplitCounts>& expected) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
  return read_corpus(in, expected);
}

std::vector<TaskExample> build_task_examples(const Corpus& corpus, TaskTag task, bool with_prefix) {
  std::vector<TaskExample> out;
  for (const auto& r : corpus.records) {
    for (std::size_t i = 0; i < r.references.size(); ++i) {
      out.push_back(make_task_example(r, task, i, with_prefix));
    }
  }
  return out;
}

std::vector<TaskExample> interleave(std::span<const TaskExample> d2s,
                                    std::span<const TaskExample> s2d) {
  if (d2s.empty() && s2d.empty()) throw Error(Errc::BothEmpty, "both task streams are empty");
  std::vector<TaskExample> out;
  out.reserve(d2s.size() + s2d.size());
  std::size_t i = 0;
  for (; i < d2s.size() && i < s2d.size(); ++i) {
    out.push_back(d2s[i]);
    out.push_back(s2d[i]);
  }
  out.insert(out.end(), d2s.begin() + static_cast<std::ptrdiff_t>(i), d2s.end());
  out.insert(out.end(), s2d.begin() + static_cast<std::ptrdiff_t>(i), s2d.end());
  return out;
}

std::uint64_t StreamRng::bounded(std::uint64_t bound) {
  const unsigned __int128 wide = static_cast<unsigned __int128>(next()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

std::vector<std::size_t> insertion_positions(std::size_t total, std::size_t count,
                                             std::uint64_t seed) {
  std::vector<std::size_t> slots(total);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  StreamRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.bounded(total - i));
    std::swap(slots[i], slots[j]);
  }
  slots.resize(count);
  std::sort(slots.begin(), slots.end());
  return slots;
}

std::vector<TaskExample> inject_synthetic(std::span<const TaskExample> base,
                                          std::span<const TaskExample> synthetic,
                                          std::uint64_t seed) {
  if (base.empty()) throw Error(Errc::EmptyBase, "base stream is empty");
  const std::size_t total = base.size() + synthetic.size();
  const auto positions = insertion_positions(total, synthetic.size(), seed);

  std::vector<TaskExample> out;
  out.reserve(total);
  std::size_t next_base = 0;
  std::size_t next_synth = 0;
  for (std::size_t pos = 0; pos < total; ++pos) {
    if (next_synth < positions.size() && positions[next_synth] == pos) {
      out.push_back(synthetic[next_synth++]);
    } else {
      out.push_back(base[next_base++]);
    }
  }
  return out;
}

SyntheticEnvelope parse_envelope_line(std::string_view line, std::size_t line_no) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(line_no, "<json>", e.what());
  }
  if (!j.is_object()) throw SchemaViolation(line_no, "<json>", "expected an object");
  SyntheticEnvelope env;
  auto text = [&](const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::string();
    if (!it->is_string()) throw SchemaViolation(line_no, name, "expected a string");
    return it->get<std::string>();
  };
  env.sentence = text("sentence");
  env.annotation = text("annotation");
  if (auto it = j.find("blocked"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaViolation(line_no, "blocked", "expected a boolean");
    env.blocked = it->get<bool>();
  }
  return env;
}

std::string_view to_string(RejectionReason r) noexcept {
  switch (r) {
    case RejectionReason::MalformedExpression: return "MalformedExpression";
    case RejectionReason::ContentFiltered: return "ContentFiltered";
    case RejectionReason::EmptyAnnotation: return "EmptyAnnotation";
  }
  return "MalformedExpression";
}

std::variant<Record, RejectionReason> validate_synthetic(const SyntheticEnvelope& envelope,
                                                         std::uint64_t id) {
  if (envelope.blocked) return RejectionReason::ContentFiltered;
  if (blank(envelope.annotation) || blank(envelope.sentence)) {
    return RejectionReason::EmptyAnnotation;
  }
  Record r;
  r.id = id;
  r.split = Split::Train;
  r.source = Source::WikiBioSynthetic;
  r.references.push_back(envelope.sentence);
  try {
    r.triples = parse_triples(envelope.annotation);
  } catch (const Error& e) {
    if (e.code() == Errc::EmptyOutput) return RejectionReason::EmptyAnnotation;
    return RejectionReason::MalformedExpression;
  }
  return r;
}

IngestionResult ingest_synthetic(std::istream& in, std::uint64_t id_base) {
  IngestionResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    ++result.report.requested;

    SyntheticEnvelope env;
    try {
      env = parse_envelope_line(line, line_no);
    } catch (const SchemaViolation& e) {
      ++result.report.malformed;
      result.rejections.push_back({line_no, RejectionReason::MalformedExpression, e.what()});
      continue;
    }
    auto outcome = validate_synthetic(env, id_base + line_no - 1);
    if (auto* record = std::get_if<Record>(&outcome)) {
      result.accepted.push_back(std::move(*record));
      ++result.report.accepted;
      continue;
    }
    const auto reason = std::get<RejectionReason>(outcome);
    if (reason == RejectionReason::ContentFiltered) {
      ++result.report.content_filtered;
    } else {
      ++result.report.malformed;
    }
    result.rejections.push_back({line_no, reason, std::string(to_string(reason))});
  }
  if (in.bad()) throw Error(Errc::IoFailure, "read error after line " + std::to_string(line_no));
  return result;
}

}  // namespace nlgbidi
