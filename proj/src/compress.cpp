#include "nlgbidi/compress.hpp"

#include <map>
#include <regex>
#include <set>

#include "nlgbidi/error.hpp"
#include "nlgbidi/serde.hpp"

namespace nlgbidi {

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::size_t count_tokens(std::string_view s) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : s) {
    bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r';
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

// One binding line is `let V = "value";\n`: len + 11 + |V| characters.
// Every use replaces the term by `$V`, saving len - |V| - 1.
bool profitable(std::size_t occurrences, std::size_t len, std::size_t var_len) {
  if (len <= var_len + 1) return false;
  return occurrences * (len - var_len - 1) > len + 11 + var_len;
}

}  // namespace

std::string variable_name(std::size_t n) {
  std::string name;
  ++n;
  while (n > 0) {
    --n;
    name.insert(name.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return name;
}

CompressedDoc compress(const TripleSet& ts, std::size_t min_occurrences) {
  if (ts.empty()) throw Error(Errc::EmptyTripleSet, "cannot compress an empty triple set");

  std::vector<std::string> order;
  std::map<std::string, std::size_t> counts;
  for (const auto& t : ts) {
    for (const Term* term : {&t.subject, &t.relation, &t.object}) {
      if (counts[term->canonical()]++ == 0) order.push_back(term->canonical());
    }
  }

  CompressedDoc doc;
  std::map<std::string, std::string> var_of;
  for (const auto& term : order) {
    std::size_t k = counts[term];
    if (k < min_occurrences) continue;
    std::string var = variable_name(doc.bindings.size());
    if (!profitable(k, term.size(), var.size())) continue;
    if (term.find('"') != std::string::npos) {
      throw Error(Errc::InvalidBindingValue, "term '" + term + "' contains a double quote");
    }
    var_of[term] = var;
    doc.bindings.push_back({var, term});
  }

  auto render = [&](const Term& term) {
    auto it = var_of.find(term.canonical());
    return it == var_of.end() ? term.canonical() : "$" + it->second;
  };
  for (const auto& t : ts) {
    if (!doc.body.empty()) doc.body.push_back(' ');
    doc.body += render(t.subject) + " | " + render(t.relation) + " | " + render(t.object) + " ;";
  }
  return doc;
}

TripleSet decompress(const CompressedDoc& doc) {
  std::map<std::string, std::string> values;
  for (const auto& b : doc.bindings) {
    if (!values.emplace(b.var, b.value).second) {
      throw Error(Errc::DuplicateBinding, "variable " + b.var + " bound twice");
    }
  }

  const std::string& body = doc.body;
  std::string expanded;
  expanded.reserve(body.size());
  for (std::size_t i = 0; i < body.size();) {
    bool at_var = body[i] == '$' && i + 1 < body.size() && is_upper(body[i + 1]) &&
                  (i == 0 || !is_alnum(body[i - 1]));
    if (!at_var) {
      expanded.push_back(body[i++]);
      continue;
    }
    std::size_t end = i + 1;
    while (end < body.size() && is_upper(body[end])) ++end;
    if (end < body.size() && is_alnum(body[end])) {
      expanded.append(body, i, end - i);
      i = end;
      continue;
    }
    std::string var = body.substr(i + 1, end - i - 1);
    auto it = values.find(var);
    if (it == values.end()) throw UnboundVariable(var);
    expanded += it->second;
    i = end;
  }
  return parse_triples(expanded);
}

std::string to_text(const CompressedDoc& doc) {
  std::string out;
  for (const auto& b : doc.bindings) {
    out += "let " + b.var + " = \"" + b.value + "\";\n";
  }
  out += doc.body;
  return out;
}

CompressedDoc parse_compressed(std::string_view text) {
  static const std::regex let_line(R"re(^\s*let\s+([A-Z]+)\s*=\s*"([^"]*)"\s*;\s*$)re");
  static const std::regex let_prefix(R"(^\s*let\s)");

  CompressedDoc doc;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line(text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                      : nl - start));
    ++line_no;
    std::smatch m;
    if (std::regex_match(line, m, let_line)) {
      doc.bindings.push_back({m[1].str(), m[2].str()});
    } else if (std::regex_search(line, let_prefix)) {
      throw Error(Errc::MalformedDocument,
                  "line " + std::to_string(line_no) + ": malformed binding '" + line + "'");
    } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
      if (!doc.body.empty()) doc.body.push_back('\n');
      doc.body += line;
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return doc;
}

SavingsStats savings_report(const TripleSet& ts, std::size_t min_occurrences) {
  std::string flat = serialize_triples(ts);
  std::string packed = to_text(compress(ts, min_occurrences));
  SavingsStats s;
  s.serialized_chars = flat.size();
  s.compressed_chars = packed.size();
  s.serialized_tokens = count_tokens(flat);
  s.compressed_tokens = count_tokens(packed);
  s.percent_saved = 100.0 * (static_cast<double>(s.serialized_chars) -
                             static_cast<double>(s.compressed_chars)) /
                    static_cast<double>(s.serialized_chars);
  return s;
}

}  // namespace nlgbidi
