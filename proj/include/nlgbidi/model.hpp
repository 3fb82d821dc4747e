#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nlgbidi {

// Unicode -> printable ASCII. Compatibility decomposition, combining marks
// and anything left outside ASCII dropped, Unicode whitespace becomes ' ',
// ASCII control characters other than whitespace are dropped. Case and
// spacing are untouched.
std::string fold_to_ascii(std::string_view utf8);

// fold_to_ascii, then '_' -> ' ', lowercase, trim, collapse whitespace runs.
std::string canonical_text(std::string_view raw);

class Term {
 public:
  const std::string& raw() const noexcept { return raw_; }
  const std::string& canonical() const noexcept { return canonical_; }

  friend bool operator==(const Term& a, const Term& b) noexcept {
    return a.canonical_ == b.canonical_;
  }

 private:
  friend Term canonicalize_term(std::string_view raw);
  Term(std::string raw, std::string canonical)
      : raw_(std::move(raw)), canonical_(std::move(canonical)) {}

  std::string raw_;
  std::string canonical_;
};

// Throws Error(EmptyTerm) when nothing survives canonicalization.
Term canonicalize_term(std::string_view raw);

using TripleKey = std::array<std::string, 3>;

struct Triple {
  Term subject;
  Term relation;
  Term object;

  // Canonicalizes the three terms. Terms containing '|' or ';' cannot be
  // serialized unambiguously and raise MalformedTriple; empty terms raise
  // EmptyTerm.
  static Triple from_raw(std::string_view subject, std::string_view relation,
                         std::string_view object);

  TripleKey key() const {
    return {subject.canonical(), relation.canonical(), object.canonical()};
  }
};

bool triples_equal(const Triple& a, const Triple& b) noexcept;

// Ordered as read; compared with set semantics over canonical keys.
class TripleSet {
 public:
  TripleSet() = default;
  explicit TripleSet(std::vector<Triple> triples) : triples_(std::move(triples)) {}

  const std::vector<Triple>& triples() const noexcept { return triples_; }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  void push_back(Triple t) { triples_.push_back(std::move(t)); }

  auto begin() const noexcept { return triples_.begin(); }
  auto end() const noexcept { return triples_.end(); }

  std::set<TripleKey> keys() const;

  friend bool operator==(const TripleSet& a, const TripleSet& b) {
    return a.keys() == b.keys();
  }

 private:
  std::vector<Triple> triples_;
};

enum class Split { Train, Validation, Test };
enum class Source { WebNLG, WikiBioSynthetic };

std::string_view to_string(Split s) noexcept;
std::string_view to_string(Source s) noexcept;
Split parse_split(std::string_view text);    // throws std::invalid_argument
Source parse_source(std::string_view text);  // throws std::invalid_argument

struct Record {
  std::uint64_t id = 0;
  TripleSet triples;
  std::vector<std::string> references;  // raw, never empty
  Split split = Split::Train;
  Source source = Source::WebNLG;
};

// One JSON Lines record: {"id","triples","references","split","source"}.
// Throws SchemaViolation naming the 1-based line and offending field.
Record parse_record_line(std::string_view line, std::size_t line_no);

// Inverse of parse_record_line. With canonical=true, terms are written in
// canonical form and references are ASCII-folded.
std::string record_to_json_line(const Record& r, bool canonical = false);

}  // namespace nlgbidi
