#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "nlgbidi/assignment.hpp"
#include "nlgbidi/error.hpp"
#include "nlgbidi/metrics.hpp"
#include "nlgbidi/serde.hpp"
#include "oracles.hpp"

using namespace nlgbidi;

namespace {

TripleSet letters(const std::string& s) {
  TripleSet ts;
  for (char c : s) ts.push_back(Triple::from_raw(std::string(1, c), "r", "o"));
  return ts;
}

std::vector<TripleKey> key_list(const TripleSet& ts) {
  std::vector<TripleKey> v;
  for (const auto& t : ts) v.push_back(t.key());
  return v;
}

}  // namespace

TEST_CASE("set_f1 on the three reference cases") {
  CHECK(set_f1(letters("a"), letters("a")).f1 == Ratio(1));
  CHECK(set_f1(letters("ab"), letters("a")).f1 == Ratio(2, 3));
  CHECK(set_f1(TripleSet{}, letters("a")).f1 == Ratio(0));
}

TEST_CASE("set_f1 breakdown") {
  F1Breakdown b = set_f1(letters("abc"), letters("bcde"));
  CHECK(b.tp == 2);
  CHECK(b.fp == 1);
  CHECK(b.fn == 2);
  CHECK(b.precision == Ratio(2, 3));
  CHECK(b.recall == Ratio(1, 2));
  CHECK(b.f1 == Ratio(4, 7));
  CHECK(set_f1(letters("xy"), letters("ab")).f1 == Ratio(0));
  try {
    set_f1(letters("a"), TripleSet{});
    FAIL("expected EmptyGold");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyGold);
  }
}

TEST_CASE("set_f1 agrees with brute force and is canonical") {
  std::mt19937_64 rng(17);
  const auto vocab = oracle::messy_terms();
  for (int i = 0; i < 500; ++i) {
    TripleSet p = oracle::random_triple_set(rng, 6, vocab);
    TripleSet g = oracle::random_triple_set(rng, 6, vocab, 1);
    auto c = oracle::brute_f1_counts(key_list(p), key_list(g));
    F1Breakdown b = set_f1(p, g);
    CHECK(static_cast<std::int64_t>(b.tp) == c.tp);
    CHECK(static_cast<std::int64_t>(b.fp) == c.fp);
    CHECK(static_cast<std::int64_t>(b.fn) == c.fn);
    const Ratio want = c.tp == 0 ? Ratio(0) : Ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    CHECK(b.f1 == want);
  }
  // Case and spacing never matter.
  TripleSet a({Triple::from_raw("Kasim_Reed", "leaderName", "Atlanta")});
  TripleSet b({Triple::from_raw("kasim reed", "LEADERNAME", "  atlanta ")});
  CHECK(set_f1(a, b).f1 == Ratio(1));
}

TEST_CASE("harmonic_mean convention") {
  CHECK(harmonic_mean(Ratio(0), Ratio(1)) == Ratio(0));
  CHECK(harmonic_mean(Ratio(1), Ratio(0)) == Ratio(0));
  CHECK(harmonic_mean(Ratio(1, 2), Ratio(1)) == Ratio(2, 3));
}

TEST_CASE("levenshtein against the full-table oracle") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("abc", "") == 3);
  CHECK(levenshtein("stone", "gemstone") == 3);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> len(0, 25), ch('a', 'e');
  for (int i = 0; i < 2000; ++i) {
    std::string a(static_cast<std::size_t>(len(rng)), 'a'), b(static_cast<std::size_t>(len(rng)), 'a');
    for (auto& c : a) c = static_cast<char>(ch(rng));
    for (auto& c : b) c = static_cast<char>(ch(rng));
    CHECK(levenshtein(a, b) == oracle::levenshtein(a, b));
  }
}

TEST_CASE("min_cost_assignment matches permutation search") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::int64_t> cost(0, 40);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
      for (auto& row : m) {
        for (auto& c : row) c = cost(rng);
      }
      auto col = min_cost_assignment(m);
      std::vector<bool> seen(n, false);
      std::int64_t total = 0;
      for (std::size_t r = 0; r < n; ++r) {
        REQUIRE(col[r] < n);
        CHECK_FALSE(seen[col[r]]);
        seen[col[r]] = true;
        total += m[r][col[r]];
      }
      CHECK(total == oracle::brute_assignment_cost(m));
    }
  }
}

TEST_CASE("align_and_edit") {
  TripleSet gold({Triple::from_raw("Atlanta", "leader", "Kasim_Reed"),
                  Triple::from_raw("Atlanta", "country", "United_States")});
  TripleSet pred({Triple::from_raw("Atlanta", "country", "United_States"),
                  Triple::from_raw("Atlanta", "leader name", "Kasim_Reed")});
  EditReport r = align_and_edit(pred, gold);
  CHECK(r.total == 5);  // " name"
  CHECK(r.per_triple_distances.size() == 2);
  CHECK(r.mean_per_record == doctest::Approx(2.5));
  CHECK(r.whole_string == levenshtein(serialize_triples(pred), serialize_triples(gold)));

  // Spurious and missed triples cost their length.
  TripleSet one({Triple::from_raw("a", "b", "c")});
  EditReport miss = align_and_edit(TripleSet{}, one);
  CHECK(miss.total == serialize_triple(one.triples()[0]).size());
  REQUIRE(miss.per_triple_distances.size() == 1);
  CHECK_FALSE(miss.per_triple_distances[0].pred.has_value());
  CHECK(miss.per_triple_distances[0].gold == std::optional<std::size_t>(0));

  try {
    align_and_edit(TripleSet{}, TripleSet{});
    FAIL("expected BothEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BothEmpty);
  }
}

TEST_CASE("align_and_edit total is the optimal alignment") {
  std::mt19937_64 rng(31);
  const auto vocab = oracle::messy_terms();
  for (int i = 0; i < 300; ++i) {
    TripleSet p = oracle::random_triple_set(rng, 4, vocab);
    TripleSet g = oracle::random_triple_set(rng, 4, vocab, 1);
    // Duplicates align once: feed the oracle the distinct serializations.
    auto distinct = [](const TripleSet& ts) {
      std::vector<std::string> out;
      for (const auto& k : ts.keys()) out.push_back(k[0] + " | " + k[1] + " | " + k[2] + " ;");
      return out;
    };
    EditReport r = align_and_edit(p, g);
    CHECK(r.total == oracle::brute_alignment_cost(distinct(p), distinct(g)));
    std::size_t sum = 0;
    for (const auto& e : r.per_triple_distances) sum += e.distance;
    CHECK(sum == r.total);
    if (p == g) CHECK(r.total == 0);
  }
}

TEST_CASE("score_tokens") {
  CHECK(score_tokens("Kevin Eastman created April O'Neil.") ==
        std::vector<std::string>{"kevin", "eastman", "created", "april", "o", "'", "neil", "."});
  CHECK(score_tokens("Bucureşti") == std::vector<std::string>{"bucuresti"});
  CHECK(score_tokens("Bucureşti", ScoreOptions{false}) == std::vector<std::string>{"bucure\xC5\x9Fti"});
}

TEST_CASE("bleu4 hand-derived cases") {
  const std::vector<std::string> refs{"the cat sat on the mat"};
  CHECK(bleu4("the cat sat on the mat", refs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bleu4("", refs) == 0.0);
  // Four hypothesis tokens, all n-grams matching a five-token reference:
  // every precision is 1 and only the brevity penalty remains.
  const double bp = bleu4("a b c d", {"a b c d e"});
  CHECK(std::abs(bp - std::exp(1.0 - 5.0 / 4.0)) < 1e-9);
  // Closest reference length wins; the exact-length reference removes the penalty.
  CHECK(bleu4("a b c d", {"a b c d e", "a b c d"}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(bleu4("a", {}), std::invalid_argument);
}

TEST_CASE("bleu4 and rouge_l agree with the frozen reference scores") {
  const auto j = nlohmann::json::parse(oracle::read_file(oracle::data_path("bleu_rouge_crosscheck.json")));
  REQUIRE(j["cases"].size() == 50);
  for (const auto& c : j["cases"]) {
    const auto refs = c["references"].get<std::vector<std::string>>();
    const std::string hyp = c["hypothesis"];
    CHECK(std::abs(bleu4(hyp, refs) - c["bleu4"].get<double>()) < 1e-4);
    CHECK(std::abs(rouge_l(hyp, refs) - c["rouge_l"].get<double>()) < 1e-4);
  }
}

TEST_CASE("rouge_l") {
  CHECK(rouge_l("a b c", {"a b c"}) == doctest::Approx(1.0));
  // LCS "a c" of 2: P = 2/3, R = 2/4, F = 4/7.
  CHECK(rouge_l("a c d", {"a b c e"}) == doctest::Approx(4.0 / 7.0));
  CHECK(rouge_l("x", {"a b", "x y"}) == doctest::Approx(2.0 / 3.0));
  CHECK(rouge_l("", {"a"}) == 0.0);
}

TEST_CASE("aggregate_scores") {
  std::vector<Report> f1s{set_f1(letters("a"), letters("a")), set_f1(letters("b"), letters("a"))};
  MetricSummary s = aggregate_scores(f1s);
  CHECK(s.kind == ReportKind::F1);
  CHECK(s.mean_f1 == doctest::Approx(0.5));
  CHECK(s.zero_f1_records == 1);
  CHECK(nlohmann::json::parse(summary_to_json(s))["mean_f1"] == 0.5);

  std::vector<Report> gen{GenScore{1.0, 0.5}, GenScore{0.0, 0.5}};
  CHECK(aggregate_scores(gen).mean_bleu4 == doctest::Approx(0.5));

  try {
    aggregate_scores({});
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyInput);
  }
  std::vector<Report> mixed{GenScore{}, set_f1(letters("a"), letters("a"))};
  try {
    aggregate_scores(mixed);
    FAIL("expected MixedReportKinds");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MixedReportKinds);
  }
}
