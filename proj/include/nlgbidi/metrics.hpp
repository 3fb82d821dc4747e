#pragma once

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlgbidi/model.hpp"

namespace nlgbidi {

using Ratio = boost::rational<std::int64_t>;

inline double to_double(const Ratio& r) { return boost::rational_cast<double>(r); }

// Harmonic mean with hm(0, x) = hm(x, 0) = 0.
Ratio harmonic_mean(const Ratio& a, const Ratio& b);

struct F1Breakdown {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  Ratio precision{0};
  Ratio recall{0};
  Ratio f1{0};
};

// Open-vocabulary set F1 over canonical whole triples. A zero denominator
// yields 0 instead of dividing. Throws Error(EmptyGold).
F1Breakdown set_f1(const TripleSet& pred, const TripleSet& gold);

std::size_t levenshtein(std::string_view a, std::string_view b);

struct EditPair {
  std::optional<std::size_t> pred;  // index into pred, none for a missed gold triple
  std::optional<std::size_t> gold;  // index into gold, none for a spurious prediction
  std::size_t distance = 0;
};

struct EditReport {
  std::vector<EditPair> per_triple_distances;
  std::size_t total = 0;          // optimal triple alignment
  double mean_per_record = 0.0;   // total / number of alignment slots
  std::size_t whole_string = 0;   // distance between the two full serializations
};

// Minimum-cost one-to-one alignment of serialized predicted and gold triples
// under character Levenshtein cost; an unaligned triple costs its full
// serialized length. Duplicate triples are aligned once. Throws
// Error(BothEmpty).
EditReport align_and_edit(const TripleSet& pred, const TripleSet& gold);

struct ScoreOptions {
  bool fold_unicode = true;  // ASCII-fold hypothesis and references alike
};

// Lowercased, punctuation split into single-character tokens, whitespace split.
std::vector<std::string> score_tokens(std::string_view text, const ScoreOptions& opts = {});

// Sentence BLEU-4 with exponential smoothing of zero-match orders and
// closest-reference brevity penalty. Empty hypothesis scores 0. Throws
// std::invalid_argument on empty references.
double bleu4(std::string_view hypothesis, const std::vector<std::string>& references,
             const ScoreOptions& opts = {});

// Best LCS F-measure over references.
double rouge_l(std::string_view hypothesis, const std::vector<std::string>& references,
               const ScoreOptions& opts = {});

struct GenScore {
  double bleu4 = 0.0;
  double rouge_l = 0.0;
};

GenScore score_generation(std::string_view hypothesis, const std::vector<std::string>& references,
                          const ScoreOptions& opts = {});

using Report = std::variant<F1Breakdown, EditReport, GenScore>;

enum class ReportKind { F1, Edit, Generation };

struct MetricSummary {
  ReportKind kind = ReportKind::F1;
  std::size_t records = 0;
  // F1
  double mean_f1 = 0.0;
  std::size_t zero_f1_records = 0;
  // Edit
  double mean_edit_per_record = 0.0;  // mean of EditReport::mean_per_record
  double mean_edit_total = 0.0;
  double mean_edit_whole_string = 0.0;
  // Generation
  double mean_bleu4 = 0.0;
  double mean_rouge_l = 0.0;
};

// Means over records, summed in input order. Throws Error(EmptyInput) or
// Error(MixedReportKinds).
MetricSummary aggregate_scores(const std::vector<Report>& per_record);

std::string summary_to_json(const MetricSummary& s);

}  // namespace nlgbidi
