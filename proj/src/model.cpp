#include "nlgbidi/model.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "nlgbidi/error.hpp"

namespace nlgbidi {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

const icu::Normalizer2& nfkd() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKDInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
      throw std::runtime_error("ICU NFKD normalizer unavailable");
    }
    return n;
  }();
  return *instance;
}

void append_ascii(std::string& out, UChar32 c) {
  if (c < 0x80) {
    char ch = static_cast<char>(c);
    if (is_ascii_space(ch)) {
      out.push_back(ch);
    } else if (c >= 0x20 && c < 0x7f) {
      out.push_back(ch);
    }
    return;
  }
  if (u_isUWhiteSpace(c)) out.push_back(' ');
}

bool all_printable_ascii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80 || (c < 0x20 && !is_ascii_space(static_cast<char>(c))) || c == 0x7f) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string fold_to_ascii(std::string_view utf8) {
  if (all_printable_ascii(utf8)) return std::string(utf8);

  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString decomposed = nfkd().normalize(source, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("NFKD normalization failed");
  }

  std::string out;
  out.reserve(utf8.size());
  for (int32_t i = 0; i < decomposed.length();) {
    UChar32 c = decomposed.char32At(i);
    i += U16_LENGTH(c);
    int8_t type = u_charType(c);
    if (type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK ||
        type == U_COMBINING_SPACING_MARK) {
      continue;
    }
    append_ascii(out, c);
  }
  return out;
}

std::string canonical_text(std::string_view raw) {
  std::string folded = fold_to_ascii(raw);
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for (char c : folded) {
    if (c == '_' || is_ascii_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

Term canonicalize_term(std::string_view raw) {
  std::string canonical = canonical_text(raw);
  if (canonical.empty()) {
    throw Error(Errc::EmptyTerm, "term '" + std::string(raw) + "' is empty after canonicalization");
  }
  return Term(std::string(raw), std::move(canonical));
}

Triple Triple::from_raw(std::string_view subject, std::string_view relation,
                        std::string_view object) {
  for (std::string_view part : {subject, relation, object}) {
    if (part.find_first_of("|;") != std::string_view::npos) {
      throw MalformedTriple(std::string(subject) + " | " + std::string(relation) +
                                " | " + std::string(object),
                            0);
    }
  }
  return Triple{canonicalize_term(subject), canonicalize_term(relation),
                canonicalize_term(object)};
}

bool triples_equal(const Triple& a, const Triple& b) noexcept {
  return a.subject == b.subject && a.relation == b.relation && a.object == b.object;
}

std::set<TripleKey> TripleSet::keys() const {
  std::set<TripleKey> out;
  for (const auto& t : triples_) out.insert(t.key());
  return out;
}

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
  }
  return "train";
}

std::string_view to_string(Source s) noexcept {
  return s == Source::WebNLG ? "webnlg" : "wikibio-synthetic";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::Train;
  if (text == "validation") return Split::Validation;
  if (text == "test") return Split::Test;
  throw std::invalid_argument("unknown split '" + std::string(text) + "'");
}

Source parse_source(std::string_view text) {
  if (text == "webnlg") return Source::WebNLG;
  if (text == "wikibio-synthetic") return Source::WikiBioSynthetic;
  throw std::invalid_argument("unknown source '" + std::string(text) + "'");
}

Record parse_record_line(std::string_view line, std::size_t line_no) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(line_no, "<json>", e.what());
  }
  if (!j.is_object()) throw SchemaViolation(line_no, "<json>", "expected an object");

  auto field = [&](const char* name) -> const json& {
    auto it = j.find(name);
    if (it == j.end()) throw SchemaViolation(line_no, name, "missing");
    return *it;
  };

  Record r;
  const json& id = field("id");
  if (!id.is_number_unsigned() && !(id.is_number_integer() && id.get<std::int64_t>() >= 0)) {
    throw SchemaViolation(line_no, "id", "expected a non-negative integer");
  }
  r.id = id.get<std::uint64_t>();

  const json& triples = field("triples");
  if (!triples.is_array() || triples.empty()) {
    throw SchemaViolation(line_no, "triples", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const json& t = triples[i];
    if (!t.is_array() || t.size() != 3 ||
        !std::all_of(t.begin(), t.end(), [](const json& x) { return x.is_string(); })) {
      throw SchemaViolation(line_no, "triples",
                            "entry " + std::to_string(i) + " is not three strings");
    }
    try {
      r.triples.push_back(Triple::from_raw(t[0].get<std::string>(), t[1].get<std::string>(),
                                           t[2].get<std::string>()));
    } catch (const Error& e) {
      throw SchemaViolation(line_no, "triples",
                            "entry " + std::to_string(i) + ": " + e.what());
    }
  }

  const json& refs = field("references");
  if (!refs.is_array() || refs.empty()) {
    throw SchemaViolation(line_no, "references", "expected a non-empty array");
  }
  for (const auto& ref : refs) {
    if (!ref.is_string()) throw SchemaViolation(line_no, "references", "expected strings");
    r.references.push_back(ref.get<std::string>());
  }

  const json& split = field("split");
  const json& source = field("source");
  if (!split.is_string()) throw SchemaViolation(line_no, "split", "expected a string");
  if (!source.is_string()) throw SchemaViolation(line_no, "source", "expected a string");
  try {
    r.split = parse_split(split.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(line_no, "split", e.what());
  }
  try {
    r.source = parse_source(source.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(line_no, "source", e.what());
  }
  return r;
}

std::string record_to_json_line(const Record& r, bool canonical) {
  using json = nlohmann::ordered_json;
  json triples = json::array();
  for (const auto& t : r.triples) {
    if (canonical) {
      triples.push_back({t.subject.canonical(), t.relation.canonical(), t.object.canonical()});
    } else {
      triples.push_back({t.subject.raw(), t.relation.raw(), t.object.raw()});
    }
  }
  json refs = json::array();
  for (const auto& ref : r.references) refs.push_back(canonical ? fold_to_ascii(ref) : ref);
  json j = {{"id", r.id},
            {"triples", std::move(triples)},
            {"references", std::move(refs)},
            {"split", to_string(r.split)},
            {"source", to_string(r.source)}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace nlgbidi
