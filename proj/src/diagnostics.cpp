#include "nlgbidi/diagnostics.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "nlgbidi/error.hpp"
#include "nlgbidi/metrics.hpp"

namespace nlgbidi {

namespace {

bool is_proper_prefix(const std::string& partial, const std::string& full) {
  return !partial.empty() && partial.size() < full.size() &&
         full.compare(0, partial.size(), partial) == 0;
}

// Copies of tokens[end - period, end) ending exactly at `end`.
std::size_t count_copies(std::span<const std::string> tokens, std::size_t end, std::size_t period) {
  std::size_t copies = 1;
  while (end >= (copies + 1) * period) {
    const std::size_t block = end - (copies + 1) * period;
    bool same = true;
    for (std::size_t i = 0; i < period && same; ++i) {
      same = tokens[block + i] == tokens[end - period + i];
    }
    if (!same) break;
    ++copies;
  }
  return copies;
}

// A cut-off restart of the cycle that precedes it: full tokens matching the
// cycle, then one token truncated mid-word.
bool valid_tail(std::span<const std::string> tokens, std::size_t period, std::size_t tail) {
  const std::size_t n = tokens.size();
  if (tail == 0) return true;
  if (tail > period || n < tail + period) return false;
  const std::size_t cycle = n - tail - period;
  for (std::size_t i = 0; i + 1 < tail; ++i) {
    if (tokens[n - tail + i] != tokens[cycle + i]) return false;
  }
  return is_proper_prefix(tokens[n - 1], tokens[cycle + tail - 1]);
}

std::string trim_lower(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

constexpr std::string_view kBuiltinUnits = R"(# canonical: synonyms
gram: g, gram, grams, gramme, grammes
kilogram: kg, kilogram, kilograms, kilo, kilos
milligram: mg, milligram, milligrams
tonne: t, tonne, tonnes, ton, tons
metre: m, metre, metres, meter, meters
kilometre: km, kilometre, kilometres, kilometer, kilometers
centimetre: cm, centimetre, centimetres, centimeter, centimeters
millimetre: mm, millimetre, millimetres, millimeter, millimeters
foot: ft, foot, feet
inch: in, inch, inches
mile: mi, mile, miles
square metre: m2, sq m, square metre, square metres, square meter, square meters
square kilometre: km2, sq km, square kilometre, square kilometres, square kilometer, square kilometers
litre: l, litre, litres, liter, liters
millilitre: ml, millilitre, millilitres, milliliter, milliliters
second: s, sec, secs, second, seconds
minute: min, mins, minute, minutes
hour: h, hr, hrs, hour, hours
day: day, days
year: yr, yrs, year, years
kelvin: k, kelvin, kelvins
degree celsius: c, celsius, degree celsius, degrees celsius
degree fahrenheit: f, fahrenheit, degree fahrenheit, degrees fahrenheit
percent: %, percent, per cent
kilometre per hour: km/h, kmh, kph, kilometres per hour, kilometers per hour
mile per hour: mph, miles per hour
kilocalorie: kcal, kilocalorie, kilocalories
)";

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

RepetitionFlag detect_repetition(std::span<const std::string> tokens,
                                 const RepetitionParams& params, bool hit_length_cap) {
  if (tokens.empty()) throw Error(Errc::EmptyInput, "no tokens to scan");

  RepetitionFlag best;
  best.period = std::max<std::size_t>(params.min_period, 1);
  best.repeats = 0;
  const std::size_t n = tokens.size();
  for (std::size_t period = std::max<std::size_t>(params.min_period, 1);
       period <= params.max_period && period <= n; ++period) {
    for (std::size_t tail = 0; tail <= period && tail + period <= n; ++tail) {
      if (!valid_tail(tokens, period, tail)) continue;
      const std::size_t repeats = count_copies(tokens, n - tail, period);
      if (repeats > best.repeats) {
        best.period = period;
        best.repeats = repeats;
        best.tail_length = tail;
        best.start_index = n - tail - repeats * period;
      }
    }
  }
  if (best.repeats == 0) {
    // min_period beyond the input length; nothing can repeat.
    best.repeats = 1;
    best.start_index = 0;
  }
  best.flagged = best.repeats >= params.min_repeats;
  best.hit_length_cap = hit_length_cap;
  return best;
}

UnitTable UnitTable::builtin() {
  static const UnitTable table = parse(kBuiltinUnits);
  return table;
}

UnitTable UnitTable::parse(std::string_view text) {
  UnitTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error(Errc::InvalidConfig, "unit table line " + std::to_string(line_no) +
                                           ": expected 'canonical: synonyms'");
    }
    std::string canonical = trim_lower(line.substr(0, colon));
    std::istringstream syns(line.substr(colon + 1));
    std::string syn;
    table.add(canonical, canonical);
    while (std::getline(syns, syn, ',')) {
      if (syn.find_first_not_of(" \t\r") != std::string::npos) table.add(canonical, syn);
    }
  }
  return table;
}

void UnitTable::add(const std::string& canonical, const std::string& synonym) {
  synonyms_[trim_lower(synonym)] = trim_lower(canonical);
}

std::optional<std::string> UnitTable::lookup(std::string_view unit) const {
  std::string key = trim_lower(unit);
  while (!key.empty() && key.back() == '.') key.pop_back();
  auto it = synonyms_.find(key);
  if (it == synonyms_.end()) return std::nullopt;
  return it->second;
}

std::optional<NumberWithUnit> parse_number_with_unit(std::string_view term, const UnitTable& units) {
  const std::string text = trim_lower(term);
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  std::string digits;
  std::size_t fraction_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  if (i < text.size() && text[i] == '.') {
    std::size_t j = i + 1;
    std::string frac;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) frac += text[j++];
    // "30." is a number; "30.x" is not.
    if (!frac.empty() || j == text.size() || text[j] == ' ') {
      digits += frac;
      fraction_digits = frac.size();
      i = j;
    }
  }
  if (digits.empty()) return std::nullopt;

  NumberWithUnit out;
  std::string rest = trim_lower(text.substr(i));
  if (!rest.empty()) {
    auto unit = units.lookup(rest);
    if (!unit) return std::nullopt;
    out.unit = std::move(unit);
    out.unit_text = rest;
  }

  using boost::multiprecision::cpp_int;
  cpp_int numerator(digits);
  cpp_int denominator = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(fraction_digits));
  out.value = Rational(negative ? cpp_int(-numerator) : numerator, denominator);
  return out;
}

std::string_view to_string(MismatchKind kind) noexcept {
  switch (kind) {
    case MismatchKind::SwappedArguments: return "swapped_arguments";
    case MismatchKind::NumericFormat: return "numeric_format";
    case MismatchKind::UnitReformulation: return "unit_reformulation";
    case MismatchKind::RelationNearMiss: return "relation_near_miss";
    case MismatchKind::Unmatched: return "unmatched";
  }
  return "unmatched";
}

namespace {

std::set<std::string> word_set(const std::string& s) {
  auto words = whitespace_tokens(s);
  return {words.begin(), words.end()};
}

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<DiagnosticLabel> classify_mismatches(const TripleSet& pred, const TripleSet& gold,
                                                 const UnitTable& units) {
  const auto pred_keys = pred.keys();
  const auto gold_keys = gold.keys();

  std::vector<const Triple*> open_gold;
  std::set<TripleKey> seen;
  for (const auto& g : gold) {
    if (!pred_keys.contains(g.key()) && seen.insert(g.key()).second) open_gold.push_back(&g);
  }

  auto same_object_number = [&](const Triple& p, const Triple& g, bool want_unit_change) {
    if (!(p.subject == g.subject && p.relation == g.relation)) return false;
    auto a = parse_number_with_unit(p.object.canonical(), units);
    auto b = parse_number_with_unit(g.object.canonical(), units);
    if (!a || !b || a->value != b->value) return false;
    if (!want_unit_change) return a->unit_text == b->unit_text;
    return a->unit && b->unit && *a->unit == *b->unit && a->unit_text != b->unit_text;
  };

  using Rule = std::function<bool(const Triple&, const Triple&)>;
  const std::vector<std::pair<MismatchKind, Rule>> rules = {
      {MismatchKind::SwappedArguments,
       [](const Triple& p, const Triple& g) {
         return p.subject == g.object && p.object == g.subject && p.relation == g.relation;
       }},
      {MismatchKind::NumericFormat,
       [&](const Triple& p, const Triple& g) { return same_object_number(p, g, false); }},
      {MismatchKind::UnitReformulation,
       [&](const Triple& p, const Triple& g) { return same_object_number(p, g, true); }},
      {MismatchKind::RelationNearMiss,
       [](const Triple& p, const Triple& g) {
         if (!(p.subject == g.subject && p.object == g.object) || p.relation == g.relation) {
           return false;
         }
         const auto& a = p.relation.canonical();
         const auto& b = g.relation.canonical();
         auto wa = word_set(a);
         auto wb = word_set(b);
         return subset_of(wa, wb) || subset_of(wb, wa) || levenshtein(a, b) <= 4;
       }},
  };

  std::vector<DiagnosticLabel> labels;
  seen.clear();
  for (const auto& p : pred) {
    if (gold_keys.contains(p.key()) || !seen.insert(p.key()).second) continue;
    DiagnosticLabel label{MismatchKind::Unmatched, p, std::nullopt};
    for (const auto& [kind, rule] : rules) {
      auto hit = std::find_if(open_gold.begin(), open_gold.end(),
                              [&](const Triple* g) { return rule(p, *g); });
      if (hit != open_gold.end()) {
        label.kind = kind;
        label.gold = **hit;
        break;
      }
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

}  // namespace nlgbidi
