#include "nlgbidi/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "nlgbidi/compress.hpp"
#include "nlgbidi/config.hpp"
#include "nlgbidi/diagnostics.hpp"
#include "nlgbidi/error.hpp"
#include "nlgbidi/metrics.hpp"
#include "nlgbidi/parallel.hpp"
#include "nlgbidi/pipeline.hpp"
#include "nlgbidi/serde.hpp"
#include "nlgbidi/stats.hpp"

namespace nlgbidi {

namespace {

using json = nlohmann::ordered_json;

// --out target: a file when a path is given, the caller's stream otherwise.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(Errc::IoFailure, "cannot write " + path);
    stream_ = file_.get();
  }

  std::ostream& operator*() { return *stream_; }

  void close() {
    stream_->flush();
    if (file_) {
      file_->close();
      if (!*file_) throw Error(Errc::IoFailure, "write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path);
  return in;
}

std::optional<Split> split_filter(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return parse_split(name);
}

Corpus load_filtered(const std::string& path, const std::string& split) {
  Corpus corpus = load_corpus(path);
  if (auto s = split_filter(split)) corpus = corpus.only(*s);
  return corpus;
}

json triple_json(const Triple& t) {
  return json::array({t.subject.canonical(), t.relation.canonical(), t.object.canonical()});
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  return os.str();
}

// Predictions: {"record_id": int, "prediction": text} per line.
std::map<std::uint64_t, std::string> load_predictions(const std::string& path) {
  auto in = open_input(path);
  std::map<std::uint64_t, std::string> preds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaViolation(line_no, "<json>", e.what());
    }
    auto id = j.find("record_id");
    auto pred = j.find("prediction");
    if (id == j.end() || !id->is_number_unsigned()) {
      throw SchemaViolation(line_no, "record_id", "expected a non-negative integer");
    }
    if (pred == j.end() || !pred->is_string()) {
      throw SchemaViolation(line_no, "prediction", "expected a string");
    }
    preds[id->get<std::uint64_t>()] = pred->get<std::string>();
  }
  return preds;
}

std::vector<const Record*> sorted_by_id(const Corpus& corpus) {
  std::vector<const Record*> out;
  for (const auto& r : corpus.records) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(),
                   [](const Record* a, const Record* b) { return a->id < b->id; });
  return out;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::string corpus, split, expected, relations, format = "text", out;
  bool sample_std = false;
  unsigned jobs = 1;
};

int run_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<SplitCounts> expected;
  if (!a.expected.empty()) {
    SplitCounts c;
    char sep1 = 0, sep2 = 0;
    std::istringstream is(a.expected);
    if (!(is >> c.train >> sep1 >> c.validation >> sep2 >> c.test) || sep1 != ',' || sep2 != ',') {
      throw CLI::ValidationError("--expected-counts", "expected TRAIN,VALIDATION,TEST");
    }
    expected = c;
  }
  Corpus corpus = load_corpus(a.corpus, expected);
  if (auto s = split_filter(a.split)) corpus = corpus.only(*s);

  const StdForm form = a.sample_std ? StdForm::Sample : StdForm::Population;
  std::vector<NamedStats> cols = {
      {"sentence", length_stats(corpus, LengthField::RecordText, form, a.jobs)},
      {"reference", length_stats(corpus, LengthField::ReferenceText, form, a.jobs)},
      {"rdf", length_stats(corpus, LengthField::SerializedRdf, form, a.jobs)},
  };
  const RecordShape shape = record_shape_stats(corpus, form);
  const auto freqs = relation_frequency(corpus);
  const SplitCounts counts = corpus.split_counts();

  Output o(a.out, out);
  if (a.format == "csv") {
    *o << length_table_csv(cols);
  } else {
    *o << length_table_text(cols) << '\n';
    *o << "records  train=" << counts.train << " validation=" << counts.validation
       << " test=" << counts.test << '\n';
    *o << "references per record  mean=" << csv_number(shape.refs_per_record_mean) << '\n';
    *o << "triples per set        mean=" << csv_number(shape.triples_per_set_mean)
       << " std=" << csv_number(shape.triples_per_set_std) << '\n';
    *o << "distinct relations     " << freqs.size() << '\n';
  }
  o.close();
  if (!a.relations.empty()) {
    Output rel(a.relations, out);
    *rel << relation_frequency_csv(freqs);
    rel.close();
  }

  err << json{{"command", "stats"},
              {"records", corpus.records.size()},
              {"train", counts.train},
              {"validation", counts.validation},
              {"test", counts.test},
              {"refs_per_record_mean", shape.refs_per_record_mean},
              {"triples_per_set_mean", shape.triples_per_set_mean},
              {"triples_per_set_std", shape.triples_per_set_std},
              {"distinct_relations", freqs.size()}}
             .dump()
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- lint

struct LintArgs {
  std::string corpus, fixed_out, out;
  bool fix = false, in_place = false;
};

bool has_non_ascii(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) >= 0x80; });
}

int run_lint(const LintArgs& a, std::ostream& out, std::ostream& err) {
  if (a.fix && a.fixed_out.empty() && !a.in_place) {
    throw CLI::ValidationError("--fix", "needs --fixed-out PATH or --in-place");
  }
  const std::string text = read_file(a.corpus);

  std::vector<json> findings;
  std::vector<std::string> cleaned;
  std::size_t records = 0, dropped = 0;
  auto finding = [&](std::size_t line, const char* kind, const std::string& field,
                     const std::string& detail) {
    findings.push_back(
        json{{"line", line}, {"kind", kind}, {"field", field}, {"detail", detail}});
  };

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++records;
    const std::size_t before = findings.size();

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_object()) {
      if (auto t = j.find("triples"); t != j.end() && t->is_array()) {
        for (std::size_t i = 0; i < t->size(); ++i) {
          const auto& triple = (*t)[i];
          const std::string where = "triples[" + std::to_string(i) + "]";
          if (!triple.is_array() || triple.size() != 3) {
            finding(line_no, "malformed_triple", where,
                    "expected 3 terms, found " +
                        std::to_string(triple.is_array() ? triple.size() : 0));
            continue;
          }
          for (const auto& term : triple) {
            if (!term.is_string()) continue;
            const auto raw = term.get<std::string>();
            if (canonical_text(raw).empty()) {
              finding(line_no, "empty_term", where, "term '" + raw + "' is empty when cleaned");
            } else if (raw.find_first_of("|;") != std::string::npos) {
              finding(line_no, "malformed_triple", where, "term '" + raw + "' contains '|' or ';'");
            } else if (has_non_ascii(raw)) {
              finding(line_no, "non_ascii", where, "term '" + raw + "' is not ASCII");
            }
          }
        }
      }
      if (auto refs = j.find("references"); refs != j.end() && refs->is_array()) {
        for (std::size_t i = 0; i < refs->size(); ++i) {
          const auto& ref = (*refs)[i];
          if (ref.is_string() && has_non_ascii(ref.get<std::string>())) {
            finding(line_no, "non_ascii", "references[" + std::to_string(i) + "]",
                    "reference is not ASCII");
          }
        }
      }
    }

    try {
      Record r = parse_record_line(line, line_no);
      cleaned.push_back(record_to_json_line(r, true));
    } catch (const SchemaViolation& e) {
      if (findings.size() == before) finding(line_no, "schema", e.field(), e.what());
      ++dropped;
    }
  }

  Output o(a.out, out);
  for (const auto& f : findings) *o << f.dump() << '\n';
  o.close();

  if (a.fix) {
    const std::string target = a.in_place ? a.corpus : a.fixed_out;
    std::ofstream fixed(target, std::ios::binary | std::ios::trunc);
    if (!fixed) throw Error(Errc::IoFailure, "cannot write " + target);
    for (const auto& l : cleaned) fixed << l << '\n';
    if (!fixed) throw Error(Errc::IoFailure, "write failed: " + target);
  }

  err << json{{"command", "lint"},
              {"records", records},
              {"findings", findings.size()},
              {"fixed", a.fix},
              {"dropped", a.fix ? dropped : 0}}
             .dump()
      << '\n';
  return findings.empty() ? kExitOk : kExitValidationFailures;
}

// ---------------------------------------------------------------- serialize / parse

struct SerializeArgs {
  std::string corpus, task = "d2s", split, out;
  bool prefix = false;
};

int run_serialize(const SerializeArgs& a, std::ostream& out, std::ostream& err) {
  const Corpus corpus = load_filtered(a.corpus, a.split);
  const auto examples = build_task_examples(corpus, parse_task_tag(a.task), a.prefix);
  Output o(a.out, out);
  for (const auto& ex : examples) *o << task_example_to_json_line(ex) << '\n';
  o.close();
  err << json{{"command", "serialize"}, {"records", corpus.records.size()},
              {"examples", examples.size()}}
             .dump()
      << '\n';
  return kExitOk;
}

struct ParseArgs {
  std::string in, out;
};

int run_parse(const ParseArgs& a, std::ostream& out, std::ostream& err) {
  auto in = open_input(a.in);
  Output o(a.out, out);
  std::string line;
  std::size_t line_no = 0, parsed = 0, failed = 0;
  while (std::getline(in, line)) {
    ++line_no;
    json row{{"line", line_no}};
    try {
      json triples = json::array();
      for (const auto& t : parse_triples(line)) triples.push_back(triple_json(t));
      row["triples"] = std::move(triples);
      ++parsed;
    } catch (const MalformedTriple& e) {
      row["error"] = "MalformedTriple";
      row["segment"] = e.segment();
      row["index"] = e.index();
      ++failed;
    } catch (const Error& e) {
      row["error"] = errc_name(e.code());
      ++failed;
    }
    *o << row.dump() << '\n';
  }
  o.close();
  err << json{{"command", "parse"}, {"lines", line_no}, {"parsed", parsed}, {"failed", failed}}.dump()
      << '\n';
  return failed == 0 ? kExitOk : kExitValidationFailures;
}

// ---------------------------------------------------------------- compress

struct CompressArgs {
  std::string in, out;
  std::size_t min_occurrences = 2;
};

int run_compress(const CompressArgs& a, std::ostream& out, std::ostream& err) {
  const TripleSet ts = parse_triples(read_file(a.in));
  const CompressedDoc doc = compress(ts, a.min_occurrences);
  const SavingsStats s = savings_report(ts, a.min_occurrences);
  Output o(a.out, out);
  *o << to_text(doc) << '\n';
  o.close();
  err << json{{"command", "compress"},
              {"bindings", doc.bindings.size()},
              {"serialized_chars", s.serialized_chars},
              {"compressed_chars", s.compressed_chars},
              {"serialized_tokens", s.serialized_tokens},
              {"compressed_tokens", s.compressed_tokens},
              {"percent_saved", s.percent_saved}}
             .dump()
      << '\n';
  return kExitOk;
}

int run_decompress(const ParseArgs& a, std::ostream& out, std::ostream& err) {
  const CompressedDoc doc = parse_compressed(read_file(a.in));
  const TripleSet ts = decompress(doc);
  Output o(a.out, out);
  *o << serialize_triples(ts) << '\n';
  o.close();
  err << json{{"command", "decompress"}, {"bindings", doc.bindings.size()}, {"triples", ts.size()}}.dump()
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- interleave / ingest

struct InterleaveArgs {
  std::string corpus, split = "train", synthetic, out;
  bool prefix = false;
  std::optional<std::uint64_t> seed;
};

int run_interleave(const InterleaveArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.synthetic.empty() && !a.seed) {
    throw CLI::ValidationError("--synthetic", "needs an explicit --seed");
  }
  const Corpus corpus = load_filtered(a.corpus, a.split);
  const auto d2s = build_task_examples(corpus, TaskTag(TaskKind::D2S), a.prefix);
  const auto s2d = build_task_examples(corpus, TaskTag(TaskKind::S2D), a.prefix);
  auto stream = interleave(d2s, s2d);

  std::size_t synthetic_count = 0;
  if (!a.synthetic.empty()) {
    const Corpus synth = load_corpus(a.synthetic);
    const auto sd = build_task_examples(synth, TaskTag(TaskKind::D2S), a.prefix);
    const auto ss = build_task_examples(synth, TaskTag(TaskKind::S2D), a.prefix);
    if (!sd.empty() || !ss.empty()) {
      const auto synthetic = interleave(sd, ss);
      synthetic_count = synthetic.size();
      stream = inject_synthetic(stream, synthetic, *a.seed);
    }
  }

  Output o(a.out, out);
  for (const auto& ex : stream) *o << task_example_to_json_line(ex) << '\n';
  o.close();
  err << json{{"command", "interleave"},
              {"records", corpus.records.size()},
              {"examples", stream.size()},
              {"synthetic_examples", synthetic_count}}
             .dump()
      << '\n';
  return kExitOk;
}

struct IngestArgs {
  std::string in, out, rejections;
  std::uint64_t id_base = 0;
  bool lenient = false;
};

int run_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  auto in = open_input(a.in);
  const IngestionResult result = ingest_synthetic(in, a.id_base);

  Output o(a.out, out);
  for (const auto& r : result.accepted) *o << record_to_json_line(r) << '\n';
  o.close();
  if (!a.rejections.empty()) {
    Output rej(a.rejections, out);
    for (const auto& r : result.rejections) {
      *rej << json{{"line", r.line}, {"reason", to_string(r.reason)}, {"detail", r.detail}}.dump()
           << '\n';
    }
    rej.close();
  }
  const auto& rep = result.report;
  err << json{{"command", "ingest-synthetic"},
              {"requested", rep.requested},
              {"content_filtered", rep.content_filtered},
              {"malformed", rep.malformed},
              {"accepted", rep.accepted}}
             .dump()
      << '\n';
  const bool failures = rep.accepted != rep.requested;
  return failures && !a.lenient ? kExitValidationFailures : kExitOk;
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string task, pred, gold, split, out, summary;
  unsigned jobs = 1;
  bool lenient = false, no_fold = false;
};

int run_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  const TaskTag task = parse_task_tag(a.task);
  const Corpus gold = load_filtered(a.gold, a.split);
  const auto preds = load_predictions(a.pred);
  const auto records = sorted_by_id(gold);
  const ScoreOptions opts{!a.no_fold};

  struct Row {
    F1Breakdown f1;
    EditReport edit;
    GenScore gen;
    bool missing = false;
    bool malformed = false;
  };
  std::vector<Row> rows(records.size());
  parallel_for(records.size(), a.jobs, [&](std::size_t i) {
    const Record& r = *records[i];
    Row& row = rows[i];
    auto it = preds.find(r.id);
    row.missing = it == preds.end();
    const std::string prediction = row.missing ? std::string() : it->second;
    if (task.kind() == TaskKind::S2D) {
      TripleSet p;
      if (!row.missing) {
        try {
          p = parse_triples(prediction);
        } catch (const Error&) {
          row.malformed = true;
        }
      }
      row.f1 = set_f1(p, r.triples);
      row.edit = align_and_edit(p, r.triples);
    } else {
      row.gen = score_generation(strip_task_prefix(prediction), r.references, opts);
    }
  });

  std::size_t missing = 0, malformed = 0, extraneous = 0;
  std::vector<Report> f1s, edits, gens;
  Output o(a.out, out);
  *o << "record_id,task,f1,tp,fp,fn,edit_total,bleu4,rouge_l\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Row& row = rows[i];
    missing += row.missing;
    malformed += row.malformed;
    *o << records[i]->id << ',' << task.name() << ',';
    if (task.kind() == TaskKind::S2D) {
      *o << csv_number(to_double(row.f1.f1)) << ',' << row.f1.tp << ',' << row.f1.fp << ','
         << row.f1.fn << ',' << row.edit.total << ",,\n";
      f1s.emplace_back(row.f1);
      edits.emplace_back(row.edit);
    } else {
      *o << ",,,,," << csv_number(row.gen.bleu4) << ',' << csv_number(row.gen.rouge_l) << '\n';
      gens.emplace_back(row.gen);
    }
  }
  o.close();
  for (const auto& [id, _] : preds) {
    bool known = std::any_of(records.begin(), records.end(),
                             [id = id](const Record* r) { return r->id == id; });
    extraneous += !known;
  }

  json summary{{"command", "score"},
               {"task", task.name()},
               {"records", records.size()},
               {"missing_predictions", missing},
               {"malformed_predictions", malformed},
               {"extraneous_predictions", extraneous}};
  if (!records.empty()) {
    if (task.kind() == TaskKind::S2D) {
      summary["f1"] = json::parse(summary_to_json(aggregate_scores(f1s)));
      summary["edit"] = json::parse(summary_to_json(aggregate_scores(edits)));
    } else {
      summary["generation"] = json::parse(summary_to_json(aggregate_scores(gens)));
    }
  }
  if (!a.summary.empty()) {
    Output s(a.summary, out);
    *s << summary.dump(2) << '\n';
    s.close();
  }
  err << summary.dump() << '\n';
  const bool failures = missing + malformed > 0;
  return failures && !a.lenient ? kExitValidationFailures : kExitOk;
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseArgs {
  std::string task = "s2d", pred, gold, split, out;
  std::size_t max_length = 0;
};

int run_diagnose(const DiagnoseArgs& a, std::ostream& out, std::ostream& err) {
  const Config cfg = config_from_env();
  const TaskTag task = parse_task_tag(a.task);
  const Corpus gold = load_filtered(a.gold, a.split);
  const auto preds = load_predictions(a.pred);

  Output o(a.out, out);
  std::map<std::string, std::size_t> counts;
  std::size_t malformed = 0;
  for (const Record* r : sorted_by_id(gold)) {
    auto it = preds.find(r->id);
    if (it == preds.end()) continue;
    const std::string_view text = strip_task_prefix(it->second);

    const auto tokens = whitespace_tokens(text);
    if (!tokens.empty()) {
      const bool capped = a.max_length > 0 && tokens.size() >= a.max_length;
      const RepetitionFlag rep = detect_repetition(tokens, cfg.repetition, capped);
      if (rep.flagged) {
        ++counts["repetition_loop"];
        *o << json{{"record_id", r->id},
                   {"kind", "repetition_loop"},
                   {"period", rep.period},
                   {"repeats", rep.repeats},
                   {"start_index", rep.start_index},
                   {"tail_length", rep.tail_length},
                   {"hit_length_cap", rep.hit_length_cap}}
                  .dump()
           << '\n';
      }
    }

    if (task.kind() != TaskKind::S2D) continue;
    TripleSet p;
    try {
      p = parse_triples(text);
    } catch (const Error&) {
      ++malformed;
      *o << json{{"record_id", r->id}, {"kind", "malformed_prediction"}}.dump() << '\n';
      continue;
    }
    for (const auto& label : classify_mismatches(p, r->triples, cfg.units)) {
      ++counts[std::string(to_string(label.kind))];
      *o << json{{"record_id", r->id},
                 {"kind", to_string(label.kind)},
                 {"pred", triple_json(label.pred)},
                 {"gold", label.gold ? triple_json(*label.gold) : json(nullptr)}}
                .dump()
         << '\n';
    }
  }
  o.close();
  json summary{{"command", "diagnose"}, {"task", task.name()}, {"malformed_predictions", malformed}};
  for (const auto& [k, v] : counts) summary[k] = v;
  err << summary.dump() << '\n';
  return malformed == 0 ? kExitOk : kExitValidationFailures;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corpus engineering and evaluation for bidirectional data-to-text corpora",
               "nlgbidi"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Corpus length, shape and relation statistics");
  c_stats->add_option("--corpus", stats.corpus, "Corpus JSON Lines")->required();
  c_stats->add_option("--split", stats.split, "Restrict to one split")
      ->check(CLI::IsMember({"train", "validation", "test"}));
  c_stats->add_option("--expected-counts", stats.expected, "TRAIN,VALIDATION,TEST split sizes");
  c_stats->add_option("--relations", stats.relations, "Write relation frequencies CSV here");
  c_stats->add_option("--format", stats.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  c_stats->add_flag("--sample-std", stats.sample_std, "Sample instead of population std");
  c_stats->add_option("--jobs", stats.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c_stats->add_option("--out", stats.out, "Output path (default stdout)");

  LintArgs lint;
  auto* c_lint = app.add_subcommand("lint", "Report records violating cleaning invariants");
  c_lint->add_option("--corpus", lint.corpus, "Corpus JSON Lines")->required();
  c_lint->add_flag("--fix", lint.fix, "Write a cleaned copy");
  c_lint->add_option("--fixed-out", lint.fixed_out, "Where --fix writes the cleaned copy");
  c_lint->add_flag("--in-place", lint.in_place, "With --fix, overwrite the corpus");
  c_lint->add_option("--out", lint.out, "Findings path (default stdout)");

  SerializeArgs ser;
  auto* c_ser = app.add_subcommand("serialize", "Emit task examples for one task");
  c_ser->add_option("--corpus", ser.corpus, "Corpus JSON Lines")->required();
  c_ser->add_option("--task", ser.task, "d2s or s2d")->check(CLI::IsMember({"d2s", "s2d"}));
  c_ser->add_option("--split", ser.split, "Restrict to one split")
      ->check(CLI::IsMember({"train", "validation", "test"}));
  c_ser->add_flag("--prefix", ser.prefix, "Prepend the task control prefix");
  c_ser->add_option("--out", ser.out, "Output path (default stdout)");

  ParseArgs parse;
  auto* c_parse = app.add_subcommand("parse", "Parse flat triple serializations, one per line");
  c_parse->add_option("--in", parse.in, "Input text")->required();
  c_parse->add_option("--out", parse.out, "Output path (default stdout)");

  CompressArgs comp;
  auto* c_comp = app.add_subcommand("compress", "Bind repeated terms to variables");
  c_comp->add_option("--in", comp.in, "Flat serialization")->required();
  c_comp->add_option("--min-occurrences", comp.min_occurrences, "Minimum uses before binding")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  c_comp->add_option("--out", comp.out, "Output path (default stdout)");

  ParseArgs decomp;
  auto* c_decomp = app.add_subcommand("decompress", "Expand a compressed document");
  c_decomp->add_option("--in", decomp.in, "Compressed document")->required();
  c_decomp->add_option("--out", decomp.out, "Output path (default stdout)");

  InterleaveArgs inter;
  auto* c_inter = app.add_subcommand("interleave", "Build the ABAB multi-task stream");
  c_inter->add_option("--corpus", inter.corpus, "Corpus JSON Lines")->required();
  c_inter->add_option("--split", inter.split, "Split to stream")
      ->check(CLI::IsMember({"train", "validation", "test"}));
  c_inter->add_flag("--prefix", inter.prefix, "Prepend task control prefixes");
  c_inter->add_option("--synthetic", inter.synthetic, "Accepted synthetic records to insert");
  c_inter->add_option("--seed", inter.seed, "Seed for synthetic insertion positions");
  c_inter->add_option("--out", inter.out, "Output path (default stdout)");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest-synthetic", "Validate LLM triple annotations");
  c_ingest->add_option("--in", ingest.in, "Envelope JSON Lines")->required();
  c_ingest->add_option("--rejections", ingest.rejections, "Write rejected lines here");
  c_ingest->add_option("--id-base", ingest.id_base, "First record id");
  c_ingest->add_flag("--lenient", ingest.lenient, "Exit 0 despite rejections");
  c_ingest->add_option("--out", ingest.out, "Accepted records (default stdout)");

  ScoreArgs score;
  auto* c_score = app.add_subcommand("score", "Score predictions against gold records");
  c_score->add_option("--task", score.task, "d2s or s2d")
      ->required()
      ->check(CLI::IsMember({"d2s", "s2d"}));
  c_score->add_option("--pred", score.pred, "Predictions JSON Lines")->required();
  c_score->add_option("--gold", score.gold, "Gold corpus JSON Lines")->required();
  c_score->add_option("--split", score.split, "Restrict gold to one split")
      ->check(CLI::IsMember({"train", "validation", "test"}));
  c_score->add_option("--summary", score.summary, "Write the corpus summary JSON here");
  c_score->add_option("--jobs", score.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c_score->add_flag("--lenient", score.lenient, "Exit 0 despite missing or malformed predictions");
  c_score->add_flag("--no-fold", score.no_fold, "Do not ASCII-fold text before BLEU/Rouge");
  c_score->add_option("--out", score.out, "CSV path (default stdout)");

  DiagnoseArgs diag;
  auto* c_diag = app.add_subcommand("diagnose", "Repetition loops and false-penalty labels");
  c_diag->add_option("--task", diag.task, "d2s or s2d")->check(CLI::IsMember({"d2s", "s2d"}));
  c_diag->add_option("--pred", diag.pred, "Predictions JSON Lines")->required();
  c_diag->add_option("--gold", diag.gold, "Gold corpus JSON Lines")->required();
  c_diag->add_option("--split", diag.split, "Restrict gold to one split")
      ->check(CLI::IsMember({"train", "validation", "test"}));
  c_diag->add_option("--max-length", diag.max_length, "Generation cap in tokens");
  c_diag->add_option("--out", diag.out, "Output path (default stdout)");

  std::vector<const char*> argv{"nlgbidi"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (c_stats->parsed()) return run_stats(stats, out, err);
    if (c_lint->parsed()) return run_lint(lint, out, err);
    if (c_ser->parsed()) return run_serialize(ser, out, err);
    if (c_parse->parsed()) return run_parse(parse, out, err);
    if (c_comp->parsed()) return run_compress(comp, out, err);
    if (c_decomp->parsed()) return run_decompress(decomp, out, err);
    if (c_inter->parsed()) return run_interleave(inter, out, err);
    if (c_ingest->parsed()) return run_ingest(ingest, out, err);
    if (c_score->parsed()) return run_score(score, out, err);
    if (c_diag->parsed()) return run_diagnose(diag, out, err);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << json{{"error", errc_name(e.code())}, {"detail", e.what()}}.dump() << '\n';
    switch (e.code()) {
      case Errc::IoFailure:
      case Errc::SchemaViolation:
      case Errc::SplitCountMismatch:
      case Errc::InvalidConfig:
        return kExitIo;
      default:
        return kExitValidationFailures;
    }
  } catch (const std::exception& e) {
    err << json{{"error", "Internal"}, {"detail", e.what()}}.dump() << '\n';
    return kExitIo;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace nlgbidi
