#include "nlgbidi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <set>
#include <stdexcept>

#include "nlgbidi/assignment.hpp"
#include "nlgbidi/error.hpp"
#include "nlgbidi/serde.hpp"

namespace nlgbidi {

Ratio harmonic_mean(const Ratio& a, const Ratio& b) {
  // Mixed int comparisons recurse forever in Boost 1.74 under C++20 rewriting.
  if (a.numerator() == 0 || b.numerator() == 0) return Ratio(0);
  return Ratio(2) * a * b / (a + b);
}

F1Breakdown set_f1(const TripleSet& pred, const TripleSet& gold) {
  if (gold.empty()) throw Error(Errc::EmptyGold, "gold triple set is empty");
  const auto p = pred.keys();
  const auto g = gold.keys();

  F1Breakdown out;
  for (const auto& key : p) {
    if (g.contains(key)) {
      ++out.tp;
    } else {
      ++out.fp;
    }
  }
  out.fn = g.size() - out.tp;

  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? Ratio(0)
                    : Ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  };
  out.precision = ratio(out.tp, out.tp + out.fp);
  out.recall = ratio(out.tp, out.tp + out.fn);
  out.f1 = harmonic_mean(out.precision, out.recall);
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

// Distinct triples (first occurrence wins) with their serialized form.
std::vector<std::pair<std::size_t, std::string>> distinct_serialized(const TripleSet& ts) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::set<TripleKey> seen;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (seen.insert(ts.triples()[i].key()).second) {
      out.emplace_back(i, serialize_triple(ts.triples()[i]));
    }
  }
  return out;
}

}  // namespace

EditReport align_and_edit(const TripleSet& pred, const TripleSet& gold) {
  if (pred.empty() && gold.empty()) {
    throw Error(Errc::BothEmpty, "nothing to align: prediction and gold are both empty");
  }
  const auto p = distinct_serialized(pred);
  const auto g = distinct_serialized(gold);
  const std::size_t n = p.size() + g.size();

  // Rows: predictions then gold placeholders. Columns: gold then prediction
  // placeholders. Placeholder pairs cost nothing.
  std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      cost[i][j] = static_cast<std::int64_t>(levenshtein(p[i].second, g[j].second));
    }
    for (std::size_t j = g.size(); j < n; ++j) {
      cost[i][j] = static_cast<std::int64_t>(p[i].second.size());
    }
  }
  for (std::size_t i = p.size(); i < n; ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      cost[i][j] = static_cast<std::int64_t>(g[j].second.size());
    }
  }

  const auto col_of_row = min_cost_assignment(cost);

  EditReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = col_of_row[i];
    const bool real_row = i < p.size();
    const bool real_col = j < g.size();
    if (!real_row && !real_col) continue;
    EditPair pair;
    if (real_row) pair.pred = p[i].first;
    if (real_col) pair.gold = g[j].first;
    pair.distance = static_cast<std::size_t>(cost[i][j]);
    report.total += pair.distance;
    report.per_triple_distances.push_back(pair);
  }
  report.mean_per_record = static_cast<double>(report.total) /
                           static_cast<double>(report.per_triple_distances.size());
  report.whole_string = levenshtein(pred.empty() ? std::string() : serialize_triples(pred),
                                    gold.empty() ? std::string() : serialize_triples(gold));
  return report;
}

std::vector<std::string> score_tokens(std::string_view text, const ScoreOptions& opts) {
  std::string folded = opts.fold_unicode ? fold_to_ascii(text) : std::string(text);
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : folded) {
    auto uc = static_cast<unsigned char>(c);
    if (uc < 0x80 && std::isspace(uc)) {
      flush();
    } else if (uc < 0x80 && std::ispunct(uc)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      cur.push_back(uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c);
    }
  }
  flush();
  return tokens;
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

void require_references(const std::vector<std::string>& references) {
  if (references.empty()) throw std::invalid_argument("at least one reference is required");
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double bleu4(std::string_view hypothesis, const std::vector<std::string>& references,
             const ScoreOptions& opts) {
  require_references(references);
  const auto hyp = score_tokens(hypothesis, opts);
  if (hyp.empty()) return 0.0;

  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back(score_tokens(r, opts));

  const std::size_t c = hyp.size();
  std::size_t r = refs.front().size();
  for (const auto& ref : refs) {
    std::size_t diff = ref.size() > c ? ref.size() - c : c - ref.size();
    std::size_t best = r > c ? r - c : c - r;
    if (diff < best || (diff == best && ref.size() < r)) r = ref.size();
  }

  double log_sum = 0.0;
  int orders = 0;
  int smooth = 0;
  bool any_match = false;
  for (std::size_t n = 1; n <= 4; ++n) {
    const NgramCounts hyp_counts = count_ngrams(hyp, n);
    const std::size_t total = c >= n ? c - n + 1 : 0;
    if (total == 0) break;

    NgramCounts max_ref;
    for (const auto& ref : refs) {
      for (const auto& [gram, count] : count_ngrams(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t matches = 0;
    for (const auto& [gram, count] : hyp_counts) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matches += std::min(count, it->second);
    }

    any_match = any_match || matches > 0;
    double p;
    if (matches == 0) {
      ++smooth;
      p = 1.0 / (std::ldexp(1.0, smooth) * static_cast<double>(total));
    } else {
      p = static_cast<double>(matches) / static_cast<double>(total);
    }
    log_sum += std::log(p);
    ++orders;
  }

  // No match at any order scores zero; smoothing only rescues partial hits.
  if (!any_match) return 0.0;
  const double bp = c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return bp * std::exp(log_sum / orders);
}

double rouge_l(std::string_view hypothesis, const std::vector<std::string>& references,
               const ScoreOptions& opts) {
  require_references(references);
  const auto hyp = score_tokens(hypothesis, opts);
  if (hyp.empty()) return 0.0;

  double best = 0.0;
  for (const auto& reference : references) {
    const auto ref = score_tokens(reference, opts);
    if (ref.empty()) continue;
    const auto lcs = static_cast<std::int64_t>(lcs_length(hyp, ref));
    Ratio precision(lcs, static_cast<std::int64_t>(hyp.size()));
    Ratio recall(lcs, static_cast<std::int64_t>(ref.size()));
    best = std::max(best, to_double(harmonic_mean(precision, recall)));
  }
  return best;
}

GenScore score_generation(std::string_view hypothesis, const std::vector<std::string>& references,
                          const ScoreOptions& opts) {
  return GenScore{bleu4(hypothesis, references, opts), rouge_l(hypothesis, references, opts)};
}

MetricSummary aggregate_scores(const std::vector<Report>& per_record) {
  if (per_record.empty()) throw Error(Errc::EmptyInput, "no reports to aggregate");
  const std::size_t kind_index = per_record.front().index();
  for (const auto& r : per_record) {
    if (r.index() != kind_index) throw Error(Errc::MixedReportKinds, "reports of different kinds");
  }

  MetricSummary s;
  s.kind = static_cast<ReportKind>(kind_index);
  s.records = per_record.size();
  const double n = static_cast<double>(per_record.size());
  for (const auto& r : per_record) {
    if (const auto* f = std::get_if<F1Breakdown>(&r)) {
      s.mean_f1 += to_double(f->f1);
      if (f->f1.numerator() == 0) ++s.zero_f1_records;
    } else if (const auto* e = std::get_if<EditReport>(&r)) {
      s.mean_edit_per_record += e->mean_per_record;
      s.mean_edit_total += static_cast<double>(e->total);
      s.mean_edit_whole_string += static_cast<double>(e->whole_string);
    } else if (const auto* g = std::get_if<GenScore>(&r)) {
      s.mean_bleu4 += g->bleu4;
      s.mean_rouge_l += g->rouge_l;
    }
  }
  s.mean_f1 /= n;
  s.mean_edit_per_record /= n;
  s.mean_edit_total /= n;
  s.mean_edit_whole_string /= n;
  s.mean_bleu4 /= n;
  s.mean_rouge_l /= n;
  return s;
}

std::string summary_to_json(const MetricSummary& s) {
  nlohmann::ordered_json j;
  j["records"] = s.records;
  switch (s.kind) {
    case ReportKind::F1:
      j["kind"] = "f1";
      j["mean_f1"] = s.mean_f1;
      j["zero_f1_records"] = s.zero_f1_records;
      break;
    case ReportKind::Edit:
      j["kind"] = "edit";
      j["mean_edit_per_triple_slot"] = s.mean_edit_per_record;
      j["mean_edit_aligned_total"] = s.mean_edit_total;
      j["mean_edit_whole_string"] = s.mean_edit_whole_string;
      break;
    case ReportKind::Generation:
      j["kind"] = "generation";
      j["mean_bleu4"] = s.mean_bleu4;
      j["mean_rouge_l"] = s.mean_rouge_l;
      break;
  }
  return j.dump();
}

}  // namespace nlgbidi
