#include <doctest.h>

#include <random>

#include "nlgbidi/compress.hpp"
#include "nlgbidi/error.hpp"
#include "nlgbidi/serde.hpp"
#include "oracles.hpp"

using namespace nlgbidi;

namespace {

TripleSet spirit_set() {
  return TripleSet({Triple::from_raw("Spirit_of_future_yet_to_come", "appears in", "A_Christmas_Carol"),
                    Triple::from_raw("Spirit_of_future_yet_to_come", "is a", "fictional_character"),
                    Triple::from_raw("Spirit_of_future_yet_to_come", "is a", "ghost"),
                    Triple::from_raw("Spirit_of_future_yet_to_come", "createdBy", "Charles_Dickens"),
                    Triple::from_raw("Spirit_of_future_yet_to_come", "appearsBefore", "Ebenezer_Scrooge")});
}

}  // namespace

TEST_CASE("variable names are bijective base 26") {
  CHECK(variable_name(0) == "A");
  CHECK(variable_name(25) == "Z");
  CHECK(variable_name(26) == "AA");
  CHECK(variable_name(27) == "AB");
  CHECK(variable_name(26 + 26 * 26) == "AAA");
}

TEST_CASE("five-triple example binds the repeated entity") {
  const TripleSet ts = spirit_set();
  CompressedDoc doc = compress(ts);
  REQUIRE(doc.bindings.size() == 1);
  CHECK(doc.bindings[0] == Binding{"A", "spirit of future yet to come"});
  CHECK(doc.body ==
        "$A | appears in | a christmas carol ; $A | is a | fictional character ; $A | is a | ghost ; "
        "$A | createdby | charles dickens ; $A | appearsbefore | ebenezer scrooge ;");
  CHECK(to_text(doc).starts_with("let A = \"spirit of future yet to come\";\n$A | appears in"));
  CHECK(decompress(doc) == ts);
  CHECK(to_text(doc).size() < serialize_triples(ts).size());

  // "is a" occurs twice but is too short to pay for a binding line.
  SavingsStats s = savings_report(ts);
  CHECK(s.compressed_chars < s.serialized_chars);
  CHECK(s.compressed_tokens < s.serialized_tokens);
  CHECK(s.percent_saved > 0.0);
}

TEST_CASE("hand-written compressed document in the literature layout") {
  // One binding per line, one triple per line, ';' glued to the object.
  const std::string text =
      "let A = \"Spirit of future yet to come\";\n"
      "$A | appears in | A Christmas Carol;\n"
      "$A | is a | fictional character;\n"
      "$A | is a | ghost;\n"
      "$A | createdBy | Charles Dickens;\n"
      "$A | appearsBefore | Ebenezer Scrooge;\n";
  CHECK(decompress(parse_compressed(text)) == spirit_set());
}

TEST_CASE("profitability rule for single-letter variables") {
  // A term of length len used k times is bound iff k * (len - 2) > len + 12.
  for (std::size_t len = 1; len <= 30; ++len) {
    for (std::size_t k = 2; k <= 6; ++k) {
      const std::string term(len, 'q');
      TripleSet ts;
      for (std::size_t i = 0; i < k; ++i) {
        ts.push_back(Triple::from_raw(term, "r" + std::to_string(i), "o"));
      }
      const bool bound = !compress(ts).bindings.empty();
      const bool expect = len >= 2 && k * (len - 2) > len + 12;
      CHECK_MESSAGE(bound == expect, "len=" << len << " k=" << k);
    }
  }
}

TEST_CASE("min_occurrences threshold") {
  TripleSet ts({Triple::from_raw("a very long entity name here", "r", "x"),
                Triple::from_raw("a very long entity name here", "s", "y"),
                Triple::from_raw("a very long entity name here", "t", "z")});
  CHECK(compress(ts, 2).bindings.size() == 1);
  CHECK(compress(ts, 4).bindings.empty());
}

TEST_CASE("compression errors") {
  CHECK_THROWS_AS(compress(TripleSet{}), Error);
  TripleSet quoted({Triple::from_raw("the \"quoted\" long entity", "r", "x"),
                    Triple::from_raw("the \"quoted\" long entity", "s", "y"),
                    Triple::from_raw("the \"quoted\" long entity", "t", "z")});
  try {
    compress(quoted);
    FAIL("expected InvalidBindingValue");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidBindingValue);
  }

  try {
    decompress(CompressedDoc{{}, "$A | b | c ;"});
    FAIL("expected UnboundVariable");
  } catch (const UnboundVariable& e) {
    CHECK(e.var() == "A");
  }
  try {
    decompress(CompressedDoc{{{"A", "x"}, {"A", "y"}}, "$A | b | c ;"});
    FAIL("expected DuplicateBinding");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DuplicateBinding);
  }
  try {
    parse_compressed("let A = unquoted;\n$A | b | c ;");
    FAIL("expected MalformedDocument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedDocument);
  }
}

TEST_CASE("lowercase dollar terms are not variables") {
  TripleSet ts({Triple::from_raw("$A", "costs", "$5")});
  CompressedDoc doc = compress(ts);
  CHECK(doc.bindings.empty());
  CHECK(decompress(doc) == ts);
}

TEST_CASE("text round trip over random sets with long names") {
  std::mt19937_64 rng(5);
  std::vector<std::string> vocab = oracle::messy_terms();
  for (int i = 0; i < 30; ++i) vocab.push_back("long entity number " + std::to_string(i) + " of the corpus");
  for (int i = 0; i < 300; ++i) {
    TripleSet ts = oracle::random_triple_set(rng, 12, vocab, 1);
    CompressedDoc doc = compress(ts);
    CompressedDoc parsed = parse_compressed(to_text(doc));
    CHECK(parsed.bindings == doc.bindings);
    CHECK(decompress(parsed) == ts);
  }
}
