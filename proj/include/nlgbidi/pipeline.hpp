#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlgbidi/model.hpp"
#include "nlgbidi/serde.hpp"

namespace nlgbidi {

struct SplitCounts {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;

  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

struct Corpus {
  std::vector<Record> records;

  SplitCounts split_counts() const;
  Corpus only(Split split) const;
  std::size_t triple_count() const;
};

// JSON Lines corpus; blank lines are skipped. Throws Error(IoFailure),
// SchemaViolation, or Error(SplitCountMismatch) when expected counts are
// given and differ.
Corpus load_corpus(const std::filesystem::path& path,
                   const std::optional<SplitCounts>& expected = std::nullopt);
Corpus read_corpus(std::istream& in, const std::optional<SplitCounts>& expected = std::nullopt);

// One example per (record, reference), corpus order.
std::vector<TaskExample> build_task_examples(const Corpus& corpus, TaskTag task, bool with_prefix);

// A,B,A,B starting with d2s; the longer stream's remainder is appended.
// Throws Error(BothEmpty).
std::vector<TaskExample> interleave(std::span<const TaskExample> d2s,
                                    std::span<const TaskExample> s2d);

// Knuth's MMIX linear congruential generator: state' = a * state + c mod 2^64,
// state starts at the seed, each draw returns the new state. Bounded draws
// take the high 64 bits of draw * bound, so any language with 128-bit (or
// emulated) multiplication reproduces a stream exactly.
class StreamRng {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit StreamRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t bounded(std::uint64_t bound);

 private:
  std::linear_congruential_engine<std::uint64_t, kMultiplier, kIncrement, 0> engine_;
};

// Sorted positions in [0, total) for `count` inserted items: a partial
// Fisher-Yates shuffle over [0, total) driven by StreamRng.
std::vector<std::size_t> insertion_positions(std::size_t total, std::size_t count,
                                             std::uint64_t seed);

// Throws Error(EmptyBase).
std::vector<TaskExample> inject_synthetic(std::span<const TaskExample> base,
                                          std::span<const TaskExample> synthetic,
                                          std::uint64_t seed);

struct SyntheticEnvelope {
  std::string sentence;
  std::string annotation;
  bool blocked = false;
};

// {"sentence": text, "annotation": text, "blocked": bool}; "blocked" is
// optional. Throws SchemaViolation.
SyntheticEnvelope parse_envelope_line(std::string_view line, std::size_t line_no);

enum class RejectionReason { MalformedExpression, ContentFiltered, EmptyAnnotation };

std::string_view to_string(RejectionReason r) noexcept;

std::variant<Record, RejectionReason> validate_synthetic(const SyntheticEnvelope& envelope,
                                                         std::uint64_t id);

struct IngestionReport {
  std::size_t requested = 0;
  std::size_t content_filtered = 0;
  std::size_t malformed = 0;  // includes empty annotations and unreadable lines
  std::size_t accepted = 0;
};

struct Rejection {
  std::size_t line = 0;
  RejectionReason reason = RejectionReason::MalformedExpression;
  std::string detail;
};

struct IngestionResult {
  std::vector<Record> accepted;
  std::vector<Rejection> rejections;
  IngestionReport report;
};

// Every non-blank line counts as one requested annotation. Accepted records
// get ids id_base, id_base + 1, ... by line order.
IngestionResult ingest_synthetic(std::istream& in, std::uint64_t id_base = 0);

}  // namespace nlgbidi
