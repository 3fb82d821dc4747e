#include <doctest.h>

#include <random>

#include "nlgbidi/config.hpp"
#include "nlgbidi/diagnostics.hpp"
#include "nlgbidi/error.hpp"
#include "oracles.hpp"

using namespace nlgbidi;

namespace {

std::vector<std::string> toks(const std::string& s) { return whitespace_tokens(s); }

MismatchKind classify_one(const Triple& p, const Triple& g) {
  auto labels = classify_mismatches(TripleSet({p}), TripleSet({g}));
  REQUIRE(labels.size() == 1);
  return labels[0].kind;
}

}  // namespace

TEST_CASE("repetition: the truncated Bucuresti generation") {
  std::string text = "The 1 Decembrie 1918 University is located in";
  for (int i = 0; i < 19; ++i) text += " Bucuresti";
  text += " Bucu";
  const auto t = toks(text);
  RepetitionFlag f = detect_repetition(t, {}, true);
  CHECK(f.flagged);
  CHECK(f.period == 1);
  CHECK(f.repeats == 19);
  CHECK(f.tail_length == 1);
  CHECK(f.hit_length_cap);
  CHECK(t[f.start_index] == "Bucuresti");
  CHECK(t[f.start_index - 1] == "in");
}

TEST_CASE("repetition: ordinary sentences are not flagged") {
  for (const char* s : {"In Mexico, the spoken language is Spanish.",
                        "Arabic is one of the languages spoken in the Philippines.",
                        "Native Americans in the United States are one of the ethnic groups of the country.",
                        "the the cat"}) {
    CHECK_FALSE(detect_repetition(toks(s)).flagged);
  }
}

TEST_CASE("repetition: longer periods and thresholds") {
  auto t = toks("intro words a b c a b c a b c a b");
  RepetitionFlag f = detect_repetition(t);
  CHECK(f.flagged);
  CHECK(f.period == 3);
  CHECK(f.repeats == 3);
  // "a b" cannot be a truncated tail ("b" is not a proper prefix of "b"),
  // so the cycle is read as "c a b".
  CHECK(f.tail_length == 0);
  CHECK(t[f.start_index] == "c");
}

TEST_CASE("repetition: a tail must end in a proper prefix") {
  // "a b" after three copies of "a b c": the last tail token equals the cycle
  // token instead of being a proper prefix, so the best reading is shorter.
  auto t = toks("x a b c a b c a b c a b");
  RepetitionFlag f = detect_repetition(t);
  auto o = oracle::brute_repetition(t, 1, 10, 3);
  CHECK(f.repeats == o.repeats);
  CHECK(f.period == o.period);
  CHECK(f.tail_length == o.tail);
}

TEST_CASE("repetition agrees with the exhaustive oracle") {
  std::mt19937_64 rng(41);
  const std::vector<std::string> alphabet{"pa", "palatul", "p", "x", "xy", "y"};
  std::uniform_int_distribution<std::size_t> len(1, 40), pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> period(1, 4), reps(1, 8);
  for (int i = 0; i < 3000; ++i) {
    std::vector<std::string> t;
    // Random prefix, then a planted cycle, then maybe a truncated tail.
    const std::size_t n = len(rng) % 12;
    for (std::size_t k = 0; k < n; ++k) t.push_back(alphabet[pick(rng)]);
    std::vector<std::string> cycle;
    for (std::size_t k = period(rng); k > 0; --k) cycle.push_back(alphabet[pick(rng)]);
    for (std::size_t r = reps(rng); r > 0 && t.size() + cycle.size() <= 40; --r) {
      t.insert(t.end(), cycle.begin(), cycle.end());
    }
    if (rng() % 2 == 0 && t.size() < 40) t.push_back("p");
    if (t.empty()) t.push_back("x");
    for (std::size_t min_r : {2u, 3u}) {
      RepetitionFlag f = detect_repetition(t, {1, 10, min_r});
      auto o = oracle::brute_repetition(t, 1, 10, min_r);
      CHECK(f.flagged == o.flagged);
      CHECK(f.repeats == o.repeats);
      CHECK(f.period == o.period);
      CHECK(f.tail_length == o.tail);
      CHECK(f.start_index == t.size() - o.tail - o.repeats * o.period);
    }
  }
  CHECK_THROWS_AS(detect_repetition(std::vector<std::string>{}), Error);
}

TEST_CASE("unit table") {
  UnitTable u = UnitTable::builtin();
  CHECK(u.lookup("grams") == std::optional<std::string>("gram"));
  CHECK(u.lookup(" G. ") == std::optional<std::string>("gram"));
  CHECK(u.lookup("Millimetres") == std::optional<std::string>("millimetre"));
  CHECK_FALSE(u.lookup("furlongs").has_value());

  UnitTable custom = UnitTable::parse("# comment\nfurlong: furlongs, fur\n\n");
  CHECK(custom.lookup("fur") == std::optional<std::string>("furlong"));
  CHECK(custom.lookup("furlong") == std::optional<std::string>("furlong"));
  CHECK_THROWS_AS(UnitTable::parse("no colon here"), Error);
}

TEST_CASE("parse_number_with_unit") {
  auto a = parse_number_with_unit("30.0 g");
  REQUIRE(a);
  CHECK(a->value == Rational(30));
  CHECK(a->unit == std::optional<std::string>("gram"));
  CHECK(a->unit_text == "g");

  auto b = parse_number_with_unit("896");
  REQUIRE(b);
  CHECK(b->value == Rational(896));
  CHECK_FALSE(b->unit.has_value());

  auto c = parse_number_with_unit("0.1");
  REQUIRE(c);
  CHECK(c->value == Rational(1) / 10);

  CHECK_FALSE(parse_number_with_unit("ghost").has_value());
  CHECK_FALSE(parse_number_with_unit("30 furlongs").has_value());
  CHECK_FALSE(parse_number_with_unit("1999-05-29").has_value());
}

TEST_CASE("classify: worked examples") {
  CHECK(classify_one(Triple::from_raw("Christian Burns", "associated band/associated musical artist", "Andrew Rayel"),
                     Triple::from_raw("Andrew Rayel", "associated band/associated musical artist", "Christian Burns")) ==
        MismatchKind::SwappedArguments);
  CHECK(classify_one(Triple::from_raw("California", "stone", "Benitoite"),
                     Triple::from_raw("California", "gemstone", "Benitoite")) == MismatchKind::RelationNearMiss);
  CHECK(classify_one(Triple::from_raw("Al Kharaitiyat SC", "league", "Qatar Stars"),
                     Triple::from_raw("Al Kharaitiyat SC", "position", "Qatar Stars League")) ==
        MismatchKind::Unmatched);
  CHECK(classify_one(Triple::from_raw("Andrews County Airport", "runway length", "896"),
                     Triple::from_raw("Andrews County Airport", "runway length", "896.0")) ==
        MismatchKind::NumericFormat);
  CHECK(classify_one(Triple::from_raw("Atlanta", "leader name", "Kasim Reed"),
                     Triple::from_raw("Atlanta", "leader", "Kasim Reed")) == MismatchKind::RelationNearMiss);
  CHECK(classify_one(Triple::from_raw("Barny cakes", "serving size", "30.0 g"),
                     Triple::from_raw("Barny cakes", "serving size", "30 grams")) ==
        MismatchKind::UnitReformulation);
  CHECK(classify_one(Triple::from_raw("Barny cakes", "serving size", "30.0 g"),
                     Triple::from_raw("Barny cakes", "serving size", "30 g")) == MismatchKind::NumericFormat);
}

TEST_CASE("classify: exact matches are not labelled and every other prediction is") {
  TripleSet gold({Triple::from_raw("a", "r", "b"), Triple::from_raw("c", "r", "d")});
  TripleSet pred({Triple::from_raw("a", "r", "b"), Triple::from_raw("d", "r", "c"),
                  Triple::from_raw("zz", "q", "yy")});
  auto labels = classify_mismatches(pred, gold);
  REQUIRE(labels.size() == 2);
  CHECK(labels[0].kind == MismatchKind::SwappedArguments);
  REQUIRE(labels[0].gold.has_value());
  CHECK(labels[0].gold->key() == TripleKey{"c", "r", "d"});
  CHECK(labels[1].kind == MismatchKind::Unmatched);
  CHECK_FALSE(labels[1].gold.has_value());
  CHECK(to_string(MismatchKind::RelationNearMiss) == "relation_near_miss");
}

TEST_CASE("config parsing") {
  Config c = parse_config(R"({"units": {"furlong": ["fur"]}, "repetition": {"min_repeats": 5}})");
  CHECK(c.units.lookup("fur") == std::optional<std::string>("furlong"));
  CHECK(c.units.lookup("grams").has_value());
  CHECK(c.repetition.min_repeats == 5);
  CHECK(c.repetition.max_period == 10);

  Config r = parse_config(R"({"units": {"furlong": ["fur"]}, "replace_builtin_units": true})");
  CHECK_FALSE(r.units.lookup("grams").has_value());

  for (const char* bad : {"[1]", "{\"units\": 3}", "{\"repetition\": {\"min_period\": 0}}",
                          "{\"repetition\": {\"min_period\": 4, \"max_period\": 2}}", "not json"}) {
    try {
      parse_config(bad);
      FAIL("expected InvalidConfig for " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidConfig);
    }
  }
  try {
    load_config(oracle::data_path("does-not-exist.json"));
    FAIL("expected IoFailure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IoFailure);
  }
}
