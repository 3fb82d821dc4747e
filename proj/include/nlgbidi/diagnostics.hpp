#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlgbidi/model.hpp"

namespace nlgbidi {

struct RepetitionParams {
  std::size_t min_period = 1;
  std::size_t max_period = 10;
  std::size_t min_repeats = 3;
};

// A cycle of `period` tokens repeated `repeats` times at the end of the
// output. Generations cut by a length cap often end mid-cycle with a
// truncated word, so the cycle may be followed by `tail_length` tokens that
// restart it, the last of which is a proper string prefix of its
// counterpart. tokens[start_index, size - tail_length) holds the copies.
struct RepetitionFlag {
  bool flagged = false;
  std::size_t period = 1;
  std::size_t repeats = 1;
  std::size_t start_index = 0;
  std::size_t tail_length = 0;
  bool hit_length_cap = false;
};

// Picks the period in [min_period, max_period] with the most trailing
// copies, smallest period on ties. Throws Error(EmptyInput).
RepetitionFlag detect_repetition(std::span<const std::string> tokens,
                                 const RepetitionParams& params = {},
                                 bool hit_length_cap = false);

std::vector<std::string> whitespace_tokens(std::string_view text);

// Unit synonyms -> canonical unit name, e.g. "grams" -> "gram".
class UnitTable {
 public:
  static UnitTable builtin();
  // Lines of `canonical: synonym, synonym, ...`; '#' starts a comment.
  static UnitTable parse(std::string_view text);

  void add(const std::string& canonical, const std::string& synonym);
  std::optional<std::string> lookup(std::string_view unit) const;
  std::size_t size() const noexcept { return synonyms_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> synonyms_;
};

using Rational = boost::multiprecision::cpp_rational;

struct NumberWithUnit {
  Rational value;
  std::optional<std::string> unit;  // canonical unit
  std::string unit_text;            // unit as written, lowercased
};

// Integer or decimal literal, optionally followed by a unit known to the
// table. Anything else is not a number.
std::optional<NumberWithUnit> parse_number_with_unit(std::string_view term,
                                                     const UnitTable& units = UnitTable::builtin());

enum class MismatchKind {
  SwappedArguments,
  NumericFormat,
  UnitReformulation,
  RelationNearMiss,
  Unmatched,
};

std::string_view to_string(MismatchKind kind) noexcept;

struct DiagnosticLabel {
  MismatchKind kind = MismatchKind::Unmatched;
  Triple pred;
  std::optional<Triple> gold;
};

// Labels every predicted triple without an exact gold match, trying
// swapped_arguments, numeric_format, unit_reformulation, relation_near_miss
// in that order against the unmatched gold triples.
std::vector<DiagnosticLabel> classify_mismatches(const TripleSet& pred, const TripleSet& gold,
                                                 const UnitTable& units = UnitTable::builtin());

}  // namespace nlgbidi
