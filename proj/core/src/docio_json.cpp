#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lexer.hpp"
#include "ontmed/docio.hpp"

namespace ontmed {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Diagnostics

std::string ParseDiagnostic::to_string() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
         (severity == DiagnosticSeverity::Error ? "error" : "warning") + ": " + message;
}

namespace {

std::string join_diagnostics(const std::vector<ParseDiagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out.empty() ? std::string("document error") : out;
}

}  // namespace

DocumentError::DocumentError(std::vector<ParseDiagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

/// Byte offset of every value in a syntactically valid JSON text, keyed by
/// JSON pointer, so semantic errors can carry a line and column.
class OffsetIndex {
 public:
  explicit OffsetIndex(std::string_view text) : text_(text) {
    skip_ws();
    value("");
  }

  std::size_t find(const std::string& pointer) const {
    auto it = offsets_.find(pointer);
    return it == offsets_.end() ? 0 : it->second;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        out += text_[pos_++];
      }
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& pointer) {
    if (pos_ >= text_.size()) return;
    offsets_[pointer] = pos_;
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(pointer + "/" + escape_pointer(key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      std::size_t index = 0;
      while (pos_ < text_.size() && text_[pos_] != ']') {
        value(pointer + "/" + std::to_string(index++));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']' &&
             text_[pos_] != ' ' && text_[pos_] != '\n' && text_[pos_] != '\r' && text_[pos_] != '\t') {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

/// Parses the JSON text once and collects diagnostics for the format readers.
class JsonReader {
 public:
  JsonReader(std::string_view text, std::string_view file) : text_(text), file_(file) {
    try {
      root_ = json::parse(text.begin(), text.end());
      index_.emplace(text);
    } catch (const json::parse_error& e) {
      int line = 1;
      int column = 1;
      std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
      detail::position_of(text, byte, line, column);
      std::string what = e.what();
      // Drop the "[json.exception.parse_error.101] parse error at line x, column y: " prefix.
      auto colon = what.find(": ");
      std::string message = colon == std::string::npos ? what : what.substr(colon + 2);
      diags_.push_back({file_, line, column, "malformed JSON: " + message, DiagnosticSeverity::Error});
    }
  }

  bool ok() const { return index_.has_value(); }
  const json& root() const { return root_; }
  std::vector<ParseDiagnostic>& diagnostics() { return diags_; }

  bool has_errors() const {
    for (const auto& d : diags_) {
      if (d.severity == DiagnosticSeverity::Error) return true;
    }
    return false;
  }

  void error(const std::string& pointer, std::string message) {
    report(pointer, std::move(message), DiagnosticSeverity::Error);
  }
  void warning(const std::string& pointer, std::string message) {
    report(pointer, std::move(message), DiagnosticSeverity::Warning);
  }

  /// Type checks; on failure record an error and return false.
  bool expect_object(const json& v, const std::string& pointer) {
    if (v.is_object()) return true;
    error(pointer, "expected an object at '" + display(pointer) + "'");
    return false;
  }
  bool expect_array(const json& v, const std::string& pointer) {
    if (v.is_array()) return true;
    error(pointer, "expected an array at '" + display(pointer) + "'");
    return false;
  }

  std::optional<std::string> string_at(const json& v, const std::string& pointer) {
    if (v.is_string()) return v.get<std::string>();
    error(pointer, "expected a string at '" + display(pointer) + "'");
    return std::nullopt;
  }

  std::optional<Iri> iri_at(const json& v, const std::string& pointer) {
    auto s = string_at(v, pointer);
    if (!s) return std::nullopt;
    Iri out;
    if (Iri::try_parse(*s, out)) return out;
    error(pointer, "invalid IRI '" + *s + "'");
    return std::nullopt;
  }

  std::optional<double> number_at(const json& v, const std::string& pointer) {
    if (v.is_number()) return v.get<double>();
    error(pointer, "expected a number at '" + display(pointer) + "'");
    return std::nullopt;
  }

  std::optional<long long> integer_at(const json& v, const std::string& pointer) {
    if (v.is_number_integer()) return v.get<long long>();
    error(pointer, "expected an integer at '" + display(pointer) + "'");
    return std::nullopt;
  }

  std::optional<bool> bool_at(const json& v, const std::string& pointer) {
    if (v.is_boolean()) return v.get<bool>();
    error(pointer, "expected a boolean at '" + display(pointer) + "'");
    return std::nullopt;
  }

  /// Member lookup; records "missing key" against the object when absent.
  const json* member(const json& obj, const std::string& pointer, const std::string& key) {
    auto it = obj.find(key);
    if (it != obj.end()) return &*it;
    error(pointer, "missing key '" + key + "'");
    return nullptr;
  }

  void reject_unknown_keys(const json& obj, const std::string& pointer,
                           std::initializer_list<std::string_view> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool found = false;
      for (auto k : known) found = found || it.key() == k;
      if (!found) warning(pointer + JsonReader::child("", it.key()), "unknown key '" + it.key() + "' ignored");
    }
  }

  template <typename T>
  Parsed<T> finish(std::optional<T> value) {
    Parsed<T> out;
    if (!has_errors()) out.value = std::move(value);
    out.diagnostics = std::move(diags_);
    return out;
  }

  static std::string child(const std::string& pointer, std::size_t index) {
    return pointer + "/" + std::to_string(index);
  }
  static std::string child(const std::string& pointer, std::string_view key) {
    return pointer + "/" + escape_pointer(std::string(key));
  }

 private:
  static std::string display(const std::string& pointer) { return pointer.empty() ? "/" : pointer; }

  void report(const std::string& pointer, std::string message, DiagnosticSeverity severity) {
    int line = 1;
    int column = 1;
    if (index_) detail::position_of(text_, index_->find(pointer), line, column);
    diags_.push_back({file_, line, column, std::move(message), severity});
  }

  std::string_view text_;
  std::string file_;
  json root_;
  std::optional<OffsetIndex> index_;
  std::vector<ParseDiagnostic> diags_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json correspondence_json(const Correspondence& c) {
  json j;
  j["e1"] = c.e1.str();
  j["e2"] = c.e2.str();
  j["rel"] = std::string(relation_token(c.rel));
  j["conf"] = c.conf;
  return j;
}

std::optional<Correspondence> read_correspondence(JsonReader& r, const json& v, const std::string& at) {
  if (!r.expect_object(v, at)) return std::nullopt;
  Correspondence c;
  bool ok = true;
  const json* e1 = r.member(v, at, "e1");
  const json* e2 = r.member(v, at, "e2");
  const json* rel = r.member(v, at, "rel");
  const json* conf = r.member(v, at, "conf");
  if (!e1 || !e2 || !rel || !conf) return std::nullopt;
  r.reject_unknown_keys(v, at, {"e1", "e2", "rel", "conf"});
  if (auto i = r.iri_at(*e1, at + "/e1")) c.e1 = *i; else ok = false;
  if (auto i = r.iri_at(*e2, at + "/e2")) c.e2 = *i; else ok = false;
  if (auto s = r.string_at(*rel, at + "/rel")) {
    if (!relation_from_token(*s, c.rel)) {
      r.error(at + "/rel", "unknown relation token '" + *s + "' (expected '=', '<' or '>')");
      ok = false;
    }
  } else {
    ok = false;
  }
  if (auto d = r.number_at(*conf, at + "/conf")) {
    if (!(*d >= 0.0 && *d <= 1.0)) {
      std::ostringstream msg;
      msg << "confidence " << *d << " out of range [0, 1]";
      r.error(at + "/conf", msg.str());
      ok = false;
    }
    c.conf = *d;
  } else {
    ok = false;
  }
  if (!ok) return std::nullopt;
  return c;
}

std::optional<std::set<Tuple>> read_tuples(JsonReader& r, const json& v, const std::string& at) {
  if (!r.expect_array(v, at)) return std::nullopt;
  std::set<Tuple> out;
  std::optional<std::size_t> arity;
  bool ok = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto at_i = JsonReader::child(at, i);
    if (!r.expect_array(v[i], at_i)) {
      ok = false;
      continue;
    }
    if (arity && *arity != v[i].size()) {
      r.error(at_i, "tuple arity " + std::to_string(v[i].size()) + " differs from " +
                        std::to_string(*arity));
      ok = false;
      continue;
    }
    arity = v[i].size();
    Tuple t;
    for (std::size_t k = 0; k < v[i].size(); ++k) {
      if (auto iri = r.iri_at(v[i][k], JsonReader::child(at_i, k))) {
        t.push_back(*iri);
      } else {
        ok = false;
      }
    }
    if (!out.insert(std::move(t)).second) r.warning(at_i, "duplicate tuple ignored");
  }
  if (!ok) return std::nullopt;
  return out;
}

json tuples_json(const std::set<Tuple>& tuples) {
  json arr = json::array();
  for (const auto& t : tuples) {
    json row = json::array();
    for (const auto& iri : t) row.push_back(iri.str());
    arr.push_back(std::move(row));
  }
  return arr;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", round_half_up(v, 4));
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Alignments

Parsed<Alignment> parse_alignment(std::string_view text, std::string_view file) {
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<Alignment>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<Alignment>(std::nullopt);
  Alignment a;
  const json* o1 = r.member(root, "", "onto1");
  const json* o2 = r.member(root, "", "onto2");
  const json* cs = r.member(root, "", "correspondences");
  r.reject_unknown_keys(root, "", {"onto1", "onto2", "correspondences"});
  if (o1) {
    if (auto i = r.iri_at(*o1, "/onto1")) a.onto1 = *i;
  }
  if (o2) {
    if (auto i = r.iri_at(*o2, "/onto2")) a.onto2 = *i;
  }
  if (cs && r.expect_array(*cs, "/correspondences")) {
    for (std::size_t i = 0; i < cs->size(); ++i) {
      if (auto c = read_correspondence(r, (*cs)[i], JsonReader::child("/correspondences", i))) {
        a.correspondences.push_back(*c);
      }
    }
  }
  return r.finish(std::optional<Alignment>(std::move(a)));
}

std::string serialize_alignment(const Alignment& a) {
  json j;
  j["onto1"] = a.onto1.str();
  j["onto2"] = a.onto2.str();
  j["correspondences"] = json::array();
  for (const auto& c : a.correspondences) j["correspondences"].push_back(correspondence_json(c));
  return dump(j);
}

std::string serialize_removals(const std::vector<Correspondence>& removed,
                               const std::vector<Axiom>& removed_axioms) {
  json j;
  j["removed"] = json::array();
  for (const auto& c : removed) j["removed"].push_back(correspondence_json(c));
  j["removedAxioms"] = json::array();
  for (const auto& ax : removed_axioms) {
    json entry;
    entry["kind"] = std::string(to_string(ax.kind));
    entry["arguments"] = json::array();
    for (const auto& arg : ax.arguments()) entry["arguments"].push_back(arg.str());
    j["removedAxioms"].push_back(std::move(entry));
  }
  return dump(j);
}

// ---------------------------------------------------------------------------
// Answers

Parsed<std::map<std::string, AnswerSet>> parse_reference_answers(std::string_view text,
                                                                 std::string_view file) {
  using Result = std::map<std::string, AnswerSet>;
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<Result>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<Result>(std::nullopt);
  Result out;
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (it.key().empty()) {
      r.error("/", "empty query id");
      continue;
    }
    if (auto tuples = read_tuples(r, it.value(), JsonReader::child("", it.key()))) {
      out[it.key()] = AnswerSet{it.key(), std::move(*tuples)};
    }
  }
  return r.finish(std::optional<Result>(std::move(out)));
}

std::string serialize_reference_answers(const std::map<std::string, AnswerSet>& answers) {
  json j = json::object();
  for (const auto& [id, set] : answers) j[id] = tuples_json(set.tuples);
  return dump(j);
}

Parsed<AnswerSet> parse_answer_set(std::string_view text, std::string_view file) {
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<AnswerSet>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<AnswerSet>(std::nullopt);
  AnswerSet a;
  const json* id = r.member(root, "", "queryId");
  const json* tuples = r.member(root, "", "tuples");
  r.reject_unknown_keys(root, "", {"queryId", "tuples"});
  if (id) {
    if (auto s = r.string_at(*id, "/queryId")) a.query_id = *s;
  }
  if (tuples) {
    if (auto t = read_tuples(r, *tuples, "/tuples")) a.tuples = std::move(*t);
  }
  return r.finish(std::optional<AnswerSet>(std::move(a)));
}

std::string serialize_answer_set(const AnswerSet& a) {
  json j;
  j["queryId"] = a.query_id;
  j["tuples"] = tuples_json(a.tuples);
  return dump(j);
}

// ---------------------------------------------------------------------------
// Merge artifacts

Parsed<std::map<Iri, std::set<LocalRef>>> parse_provenance(std::string_view text,
                                                           std::string_view file) {
  using Result = std::map<Iri, std::set<LocalRef>>;
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<Result>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<Result>(std::nullopt);
  Result out;
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string at = JsonReader::child("", it.key());
    Iri global;
    if (!Iri::try_parse(it.key(), global)) {
      r.error(at, "invalid global IRI '" + it.key() + "'");
      continue;
    }
    if (!r.expect_array(it.value(), at)) continue;
    auto& refs = out[global];
    for (std::size_t i = 0; i < it.value().size(); ++i) {
      const json& pair = it.value()[i];
      const auto at_i = JsonReader::child(at, i);
      if (!r.expect_array(pair, at_i)) continue;
      if (pair.size() != 2) {
        r.error(at_i, "expected [sourceIri, localIri]");
        continue;
      }
      auto src = r.iri_at(pair[0], JsonReader::child(at_i, std::size_t{0}));
      auto local = r.iri_at(pair[1], JsonReader::child(at_i, std::size_t{1}));
      if (src && local) refs.emplace(*src, *local);
    }
    if (refs.empty()) r.error(at, "global entity without local members");
  }
  return r.finish(std::optional<Result>(std::move(out)));
}

std::string serialize_provenance(const MergedOntology& m) {
  json j = json::object();
  for (const auto& [global, refs] : m.provenance) {
    json arr = json::array();
    for (const auto& [src, local] : refs) arr.push_back(json::array({src.str(), local.str()}));
    j[global.str()] = std::move(arr);
  }
  return dump(j);
}

Parsed<QualityReport> parse_report(std::string_view text, std::string_view file) {
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<QualityReport>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<QualityReport>(std::nullopt);
  QualityReport report;
  r.reject_unknown_keys(root, "", {"target", "findings", "counts"});
  if (auto it = root.find("target"); it != root.end()) {
    if (auto i = r.iri_at(*it, "/target")) report.target = *i;
  }
  const json* findings = r.member(root, "", "findings");
  if (findings && r.expect_array(*findings, "/findings")) {
    for (std::size_t i = 0; i < findings->size(); ++i) {
      const json& f = (*findings)[i];
      const auto at = JsonReader::child("/findings", i);
      if (!r.expect_object(f, at)) continue;
      const json* cat = r.member(f, at, "category");
      const json* sev = r.member(f, at, "severity");
      const json* ents = r.member(f, at, "entities");
      const json* expl = r.member(f, at, "explanation");
      if (!cat || !sev || !ents || !expl) continue;
      Finding finding;
      if (auto s = r.string_at(*cat, at + "/category")) {
        if (!category_from_string(*s, finding.category)) r.error(at + "/category", "unknown category '" + *s + "'");
      }
      if (auto s = r.string_at(*sev, at + "/severity")) {
        if (!severity_from_string(*s, finding.severity)) {
          r.error(at + "/severity", "unknown severity '" + *s + "'");
        } else if (finding.severity != severity_of(finding.category)) {
          r.error(at + "/severity", "severity " + *s + " does not match category " +
                                        std::string(to_string(finding.category)));
        }
      }
      if (r.expect_array(*ents, at + "/entities")) {
        for (std::size_t k = 0; k < ents->size(); ++k) {
          if (auto iri = r.iri_at((*ents)[k], JsonReader::child(at + "/entities", k))) {
            finding.entities.push_back(*iri);
          }
        }
      }
      if (auto s = r.string_at(*expl, at + "/explanation")) finding.explanation = *s;
      report.findings.push_back(std::move(finding));
    }
  }
  for (const auto& f : report.findings) ++report.counts[f.category];
  if (auto it = root.find("counts"); it != root.end() && r.expect_object(*it, "/counts")) {
    for (auto c = it->begin(); c != it->end(); ++c) {
      Category cat;
      const std::string at = JsonReader::child("/counts", c.key());
      if (!category_from_string(c.key(), cat)) {
        r.error(at, "unknown category '" + c.key() + "'");
      } else if (auto n = r.integer_at(c.value(), at); n && static_cast<std::size_t>(*n) != report.count(cat)) {
        r.error(at, "count " + std::to_string(*n) + " disagrees with " + std::to_string(report.count(cat)) +
                        " listed findings");
      }
    }
  }
  return r.finish(std::optional<QualityReport>(std::move(report)));
}

std::string serialize_report(const QualityReport& r) {
  json j;
  if (!r.target.empty()) j["target"] = r.target.str();
  j["findings"] = json::array();
  for (const auto& f : r.findings) {
    json entry;
    entry["category"] = std::string(to_string(f.category));
    entry["severity"] = std::string(to_string(f.severity));
    entry["entities"] = json::array();
    for (const auto& e : f.entities) entry["entities"].push_back(e.str());
    entry["explanation"] = f.explanation;
    j["findings"].push_back(std::move(entry));
  }
  json counts = json::object();
  for (Category c : kAllCategories) {
    if (r.count(c) > 0) counts[std::string(to_string(c))] = r.count(c);
  }
  if (!counts.empty()) j["counts"] = std::move(counts);
  return dump(j);
}

std::string render_report_text(const QualityReport& r) {
  std::string out;
  for (const auto& f : r.findings) {
    std::string severity(to_string(f.severity));
    for (auto& ch : severity) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    out += severity + " " + std::string(to_string(f.category)) + " ";
    for (std::size_t i = 0; i < f.entities.size(); ++i) {
      if (i > 0) out += ",";
      out += f.entities[i].str();
    }
    out += " — " + f.explanation + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

Parsed<EvaluationResult> parse_evaluation(std::string_view text, std::string_view file) {
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<EvaluationResult>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<EvaluationResult>(std::nullopt);
  EvaluationResult e;
  r.reject_unknown_keys(root, "", {"answered", "total", "avgPrecision", "avgRecall", "avgFmeasure",
                                   "hFmeasure", "perQuery"});
  auto count_of = [&](std::string_view key, std::size_t& out) {
    if (const json* v = r.member(root, "", std::string(key))) {
      if (auto n = r.integer_at(*v, "/" + std::string(key))) {
        if (*n < 0) {
          r.error("/" + std::string(key), "negative count");
        } else {
          out = static_cast<std::size_t>(*n);
        }
      }
    }
  };
  auto real_of = [&](const json& obj, const std::string& at, std::string_view key, double& out) {
    if (const json* v = r.member(obj, at, std::string(key))) {
      if (auto d = r.number_at(*v, at + "/" + std::string(key))) out = *d;
    }
  };
  count_of("answered", e.answered_count);
  count_of("total", e.total_queries);
  real_of(root, "", "avgPrecision", e.avg_precision);
  real_of(root, "", "avgRecall", e.avg_recall);
  real_of(root, "", "avgFmeasure", e.avg_fmeasure);
  real_of(root, "", "hFmeasure", e.h_fmeasure);
  if (const json* pq = r.member(root, "", "perQuery"); pq && r.expect_array(*pq, "/perQuery")) {
    for (std::size_t i = 0; i < pq->size(); ++i) {
      const json& q = (*pq)[i];
      const auto at = JsonReader::child("/perQuery", i);
      if (!r.expect_object(q, at)) continue;
      QueryScore s;
      if (const json* id = r.member(q, at, "queryId")) {
        if (auto str = r.string_at(*id, at + "/queryId")) s.query_id = *str;
      }
      if (const json* a = r.member(q, at, "answered")) {
        if (auto b = r.bool_at(*a, at + "/answered")) s.answered = *b;
      }
      real_of(q, at, "precision", s.precision);
      real_of(q, at, "recall", s.recall);
      real_of(q, at, "fmeasure", s.fmeasure);
      e.per_query.push_back(std::move(s));
    }
    if (e.per_query.size() != e.total_queries) {
      r.error("/total", "total " + std::to_string(e.total_queries) + " disagrees with " +
                            std::to_string(e.per_query.size()) + " perQuery entries");
    }
  }
  return r.finish(std::optional<EvaluationResult>(std::move(e)));
}

std::string serialize_evaluation(const EvaluationResult& e) {
  // Hand-written so reals always carry exactly four decimals.
  std::ostringstream out;
  out << "{\n";
  out << "  \"answered\": " << e.answered_count << ",\n";
  out << "  \"total\": " << e.total_queries << ",\n";
  out << "  \"avgPrecision\": " << fixed4(e.avg_precision) << ",\n";
  out << "  \"avgRecall\": " << fixed4(e.avg_recall) << ",\n";
  out << "  \"avgFmeasure\": " << fixed4(e.avg_fmeasure) << ",\n";
  out << "  \"hFmeasure\": " << fixed4(e.h_fmeasure) << ",\n";
  out << "  \"perQuery\": [";
  for (std::size_t i = 0; i < e.per_query.size(); ++i) {
    const auto& s = e.per_query[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"queryId\": " << json(s.query_id).dump() << ",\n";
    out << "      \"answered\": " << (s.answered ? "true" : "false") << ",\n";
    out << "      \"precision\": " << fixed4(s.precision) << ",\n";
    out << "      \"recall\": " << fixed4(s.recall) << ",\n";
    out << "      \"fmeasure\": " << fixed4(s.fmeasure) << "\n";
    out << "    }";
  }
  out << (e.per_query.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Manifest

std::filesystem::path Manifest::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

Parsed<Manifest> parse_manifest(std::string_view text, std::string_view file) {
  JsonReader r(text, file);
  if (!r.ok()) return r.finish<Manifest>(std::nullopt);
  const json& root = r.root();
  if (!r.expect_object(root, "")) return r.finish<Manifest>(std::nullopt);
  Manifest m;
  r.reject_unknown_keys(root, "", {"sources", "alignments", "queries", "references", "thresholds"});

  auto string_list = [&](const json& v, const std::string& at, std::vector<std::string>& out) {
    if (!r.expect_array(v, at)) return;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (auto s = r.string_at(v[i], JsonReader::child(at, i))) out.push_back(*s);
    }
  };

  if (const json* sources = r.member(root, "", "sources"); sources && r.expect_array(*sources, "/sources")) {
    if (sources->empty()) r.error("/sources", "at least one source is required");
    for (std::size_t i = 0; i < sources->size(); ++i) {
      const json& s = (*sources)[i];
      const auto at = JsonReader::child("/sources", i);
      SourceEntry entry;
      if (s.is_string()) {
        entry.ontology = s.get<std::string>();
      } else if (r.expect_object(s, at)) {
        r.reject_unknown_keys(s, at, {"ontology", "abox"});
        if (const json* o = r.member(s, at, "ontology")) {
          if (auto str = r.string_at(*o, at + "/ontology")) entry.ontology = *str;
        }
        if (auto it = s.find("abox"); it != s.end()) string_list(*it, at + "/abox", entry.aboxes);
      }
      m.sources.push_back(std::move(entry));
    }
  }
  if (auto it = root.find("alignments"); it != root.end()) string_list(*it, "/alignments", m.alignments);
  if (auto it = root.find("queries"); it != root.end()) {
    if (it->is_string()) {
      m.queries.push_back(it->get<std::string>());
      m.queries_is_directory = true;
    } else {
      string_list(*it, "/queries", m.queries);
    }
  }
  if (auto it = root.find("references"); it != root.end()) {
    if (auto s = r.string_at(*it, "/references")) m.references = *s;
  }
  if (auto it = root.find("thresholds"); it != root.end() && r.expect_object(*it, "/thresholds")) {
    const json& t = *it;
    r.reject_unknown_keys(t, "/thresholds", {"theta", "tau", "chain_length", "clump_size"});
    auto unit = [&](std::string_view key, double& out) {
      auto tk = t.find(std::string(key));
      if (tk == t.end()) return;
      const std::string at = "/thresholds/" + std::string(key);
      if (auto d = r.number_at(*tk, at)) {
        if (!(*d >= 0.0 && *d <= 1.0)) {
          r.error(at, std::string(key) + " must lie in [0, 1]");
        } else {
          out = *d;
        }
      }
    };
    auto at_least_two = [&](std::string_view key, int& out) {
      auto tk = t.find(std::string(key));
      if (tk == t.end()) return;
      const std::string at = "/thresholds/" + std::string(key);
      if (auto n = r.integer_at(*tk, at)) {
        if (*n < 2 || *n > 1000000) {
          r.error(at, std::string(key) + " must be an integer >= 2");
        } else {
          out = static_cast<int>(*n);
        }
      }
    };
    unit("theta", m.thresholds.theta);
    unit("tau", m.thresholds.tau);
    at_least_two("chain_length", m.thresholds.chain_length);
    at_least_two("clump_size", m.thresholds.clump_size);
  }
  m.base_dir = std::filesystem::path(std::string(file)).parent_path();
  return r.finish(std::optional<Manifest>(std::move(m)));
}

std::string serialize_manifest(const Manifest& m) {
  json j;
  j["sources"] = json::array();
  for (const auto& s : m.sources) {
    json entry;
    entry["ontology"] = s.ontology;
    entry["abox"] = s.aboxes;
    j["sources"].push_back(std::move(entry));
  }
  j["alignments"] = m.alignments;
  if (m.queries_is_directory && m.queries.size() == 1) {
    j["queries"] = m.queries.front();
  } else {
    j["queries"] = m.queries;
  }
  if (m.references) j["references"] = *m.references;
  j["thresholds"]["theta"] = m.thresholds.theta;
  j["thresholds"]["tau"] = m.thresholds.tau;
  j["thresholds"]["chain_length"] = m.thresholds.chain_length;
  j["thresholds"]["clump_size"] = m.thresholds.clump_size;
  return dump(j);
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) {
    throw DocumentError({{path.string(), 1, 1, "cannot read file", DiagnosticSeverity::Error}});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DocumentError({{path.string(), 1, 1, "cannot write file", DiagnosticSeverity::Error}});
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DocumentError({{path.string(), 1, 1, "write failed", DiagnosticSeverity::Error}});
}

}  // namespace ontmed
