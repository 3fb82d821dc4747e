#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlgbidi/pipeline.hpp"

namespace nlgbidi {

// ReferenceText: one value per reference. RecordText: one value per record,
// its references joined by single spaces (the per-record sentence column).
// SerializedRdf: one value per record.
enum class LengthField { ReferenceText, RecordText, SerializedRdf };
enum class StdForm { Population, Sample };

struct LengthStats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double max = 0.0;
};

// Unicode code points in a UTF-8 string.
std::size_t char_length(std::string_view utf8);

// The serialization grammar applied to raw, uncleaned terms.
std::string raw_serialization(const TripleSet& ts);

// Percentile of sorted data with linear interpolation between order
// statistics at rank q * (n - 1).
double percentile_linear(const std::vector<double>& sorted, double q);

// Sums of values and squares are kept in exact integer arithmetic, so the
// result does not depend on input order. Throws Error(EmptyCorpus) on no
// values.
LengthStats summarize(std::vector<std::uint64_t> values, StdForm form = StdForm::Population);

// Character lengths of raw, uncleaned text. Throws Error(EmptyCorpus).
LengthStats length_stats(const Corpus& corpus, LengthField field,
                         StdForm form = StdForm::Population, unsigned jobs = 1);

struct RelationFrequency {
  std::string relation;
  std::size_t count = 0;

  friend bool operator==(const RelationFrequency&, const RelationFrequency&) = default;
};

// Descending count, ties alphabetical. Throws Error(EmptyCorpus).
std::vector<RelationFrequency> relation_frequency(const Corpus& corpus);

struct RecordShape {
  double refs_per_record_mean = 0.0;
  double triples_per_set_mean = 0.0;
  double triples_per_set_std = 0.0;
};

// Throws Error(EmptyCorpus).
RecordShape record_shape_stats(const Corpus& corpus, StdForm form = StdForm::Population);

using NamedStats = std::pair<std::string, LengthStats>;

// Rows mean/std/min/25%/50%/75%/max, one column per named statistic.
std::string length_table_csv(const std::vector<NamedStats>& columns);
std::string length_table_text(const std::vector<NamedStats>& columns);
std::string relation_frequency_csv(const std::vector<RelationFrequency>& freqs);

}  // namespace nlgbidi
