#include "nlgbidi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "nlgbidi/error.hpp"
#include "nlgbidi/parallel.hpp"

namespace nlgbidi {

namespace {

using Wide = unsigned __int128;

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

// Exact integer sums; one rounding step at the end.
Moments moments(const std::vector<std::uint64_t>& values, StdForm form) {
  Wide sum = 0;
  Wide sum_sq = 0;
  for (auto v : values) {
    sum += v;
    sum_sq += static_cast<Wide>(v) * v;
  }
  const auto n = static_cast<Wide>(values.size());
  Moments m;
  m.mean = static_cast<double>(sum) / static_cast<double>(n);
  // n * sum_sq - sum^2 = n^2 * population variance, never negative.
  const Wide scaled = n * sum_sq - sum * sum;
  const double denom = form == StdForm::Population
                           ? static_cast<double>(n) * static_cast<double>(n)
                           : static_cast<double>(n) * static_cast<double>(n - (n > 1 ? 1 : 0));
  m.std = values.size() < 2 ? 0.0 : std::sqrt(static_cast<double>(scaled) / denom);
  return m;
}

void require_records(const Corpus& corpus) {
  if (corpus.records.empty()) throw Error(Errc::EmptyCorpus, "corpus has no records");
}

}  // namespace

std::size_t char_length(std::string_view utf8) {
  return static_cast<std::size_t>(std::count_if(utf8.begin(), utf8.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string raw_serialization(const TripleSet& ts) {
  std::string out;
  for (const auto& t : ts) {
    if (!out.empty()) out.push_back(' ');
    out += t.subject.raw() + " | " + t.relation.raw() + " | " + t.object.raw() + " ;";
  }
  return out;
}

double percentile_linear(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw Error(Errc::EmptyCorpus, "percentile of no values");
  const double rank = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

LengthStats summarize(std::vector<std::uint64_t> values, StdForm form) {
  if (values.empty()) throw Error(Errc::EmptyCorpus, "no values to summarize");
  const Moments m = moments(values, form);
  std::sort(values.begin(), values.end());
  std::vector<double> sorted(values.begin(), values.end());

  LengthStats s;
  s.count = values.size();
  s.mean = m.mean;
  s.std = m.std;
  s.min = sorted.front();
  s.max = sorted.back();
  s.p25 = percentile_linear(sorted, 0.25);
  s.p50 = percentile_linear(sorted, 0.50);
  s.p75 = percentile_linear(sorted, 0.75);
  return s;
}

LengthStats length_stats(const Corpus& corpus, LengthField field, StdForm form, unsigned jobs) {
  require_records(corpus);
  const auto& records = corpus.records;
  std::vector<std::vector<std::uint64_t>> per_record(records.size());
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    const Record& r = records[i];
    if (field == LengthField::ReferenceText) {
      for (const auto& ref : r.references) per_record[i].push_back(char_length(ref));
    } else if (field == LengthField::RecordText) {
      std::size_t n = r.references.size() - 1;  // joining spaces
      for (const auto& ref : r.references) n += char_length(ref);
      per_record[i].push_back(n);
    } else {
      per_record[i].push_back(char_length(raw_serialization(r.triples)));
    }
  });
  std::vector<std::uint64_t> lengths;
  for (const auto& v : per_record) lengths.insert(lengths.end(), v.begin(), v.end());
  return summarize(std::move(lengths), form);
}

std::vector<RelationFrequency> relation_frequency(const Corpus& corpus) {
  require_records(corpus);
  std::map<std::string, std::size_t> counts;
  for (const auto& r : corpus.records) {
    for (const auto& t : r.triples) ++counts[t.relation.canonical()];
  }
  std::vector<RelationFrequency> out;
  out.reserve(counts.size());
  for (auto& [rel, n] : counts) out.push_back({rel, n});
  // std::map already yields alphabetical order; stable_sort keeps it on ties.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.count > b.count; });
  return out;
}

RecordShape record_shape_stats(const Corpus& corpus, StdForm form) {
  require_records(corpus);
  std::vector<std::uint64_t> refs, triples;
  refs.reserve(corpus.records.size());
  triples.reserve(corpus.records.size());
  for (const auto& r : corpus.records) {
    refs.push_back(r.references.size());
    triples.push_back(r.triples.size());
  }
  const Moments rm = moments(refs, form);
  const Moments tm = moments(triples, form);
  return RecordShape{rm.mean, tm.mean, tm.std};
}

namespace {

struct Row {
  const char* label;
  double LengthStats::*field;
};

constexpr Row kRows[] = {
    {"mean", &LengthStats::mean}, {"std", &LengthStats::std}, {"min", &LengthStats::min},
    {"25%", &LengthStats::p25},   {"50%", &LengthStats::p50}, {"75%", &LengthStats::p75},
    {"max", &LengthStats::max},
};

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string length_table_csv(const std::vector<NamedStats>& columns) {
  std::ostringstream os;
  os << "stat";
  for (const auto& [name, _] : columns) os << ',' << name;
  os << '\n';
  for (const auto& row : kRows) {
    os << row.label;
    for (const auto& [_, s] : columns) os << ',' << fixed2(s.*row.field);
    os << '\n';
  }
  return os.str();
}

std::string length_table_text(const std::vector<NamedStats>& columns) {
  std::vector<std::size_t> widths;
  for (const auto& [name, s] : columns) {
    std::size_t w = name.size();
    for (const auto& row : kRows) w = std::max(w, fixed2(s.*row.field).size());
    widths.push_back(w);
  }
  std::ostringstream os;
  os << std::left << std::setw(6) << "";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    os << "  " << std::right << std::setw(static_cast<int>(widths[c])) << columns[c].first;
  }
  os << '\n';
  for (const auto& row : kRows) {
    os << std::left << std::setw(6) << row.label;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << "  " << std::right << std::setw(static_cast<int>(widths[c]))
         << fixed2(columns[c].second.*row.field);
    }
    os << '\n';
  }
  return os.str();
}

std::string relation_frequency_csv(const std::vector<RelationFrequency>& freqs) {
  std::ostringstream os;
  os << "relation,count\n";
  for (const auto& f : freqs) {
    // Relations may contain commas; quote per RFC 4180 when they do.
    if (f.relation.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : f.relation) {
        if (c == '"') q += '"';
        q += c;
      }
      os << q << '"';
    } else {
      os << f.relation;
    }
    os << ',' << f.count << '\n';
  }
  return os.str();
}

}  // namespace nlgbidi
