#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nlgbidi/model.hpp"

namespace nlgbidi {

struct Binding {
  std::string var;    // A..Z, AA, AB, ...
  std::string value;  // canonical term

  friend bool operator==(const Binding&, const Binding&) = default;
};

// Triple sets with repeated long terms bound to short variables:
//
//   let A = "spirit of future yet to come";
//   $A | appears in | a christmas carol ; $A | is a | ghost ;
struct CompressedDoc {
  std::vector<Binding> bindings;
  std::string body;
};

// Name of the n-th variable (0 -> "A", 25 -> "Z", 26 -> "AA").
std::string variable_name(std::size_t n);

// Binds every term occurring at least min_occurrences times for which the
// binding line costs fewer characters than it saves. Variables are handed
// out in first-occurrence order. Throws Error(EmptyTripleSet), or
// Error(InvalidBindingValue) for a term to be bound that contains '"'.
CompressedDoc compress(const TripleSet& ts, std::size_t min_occurrences = 2);

// Throws UnboundVariable, Error(DuplicateBinding) and any parse_triples error.
TripleSet decompress(const CompressedDoc& doc);

// `let VAR = "value";` lines, one per binding, then the body.
std::string to_text(const CompressedDoc& doc);
// Throws Error(MalformedDocument) for a `let` line that does not parse.
CompressedDoc parse_compressed(std::string_view text);

struct SavingsStats {
  std::size_t serialized_chars = 0;
  std::size_t compressed_chars = 0;
  std::size_t serialized_tokens = 0;  // whitespace-delimited
  std::size_t compressed_tokens = 0;
  double percent_saved = 0.0;         // of characters
};

SavingsStats savings_report(const TripleSet& ts, std::size_t min_occurrences = 2);

}  // namespace nlgbidi
