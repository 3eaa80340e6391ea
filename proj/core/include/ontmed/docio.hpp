#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontmed/aligner.hpp"
#include "ontmed/evaluator.hpp"
#include "ontmed/mediator.hpp"
#include "ontmed/merger.hpp"
#include "ontmed/ontology.hpp"
#include "ontmed/quality.hpp"

namespace ontmed {

enum class DiagnosticSeverity { Error, Warning };

struct ParseDiagnostic {
  std::string file;
  int line = 1;
  int column = 1;
  std::string message;
  DiagnosticSeverity severity = DiagnosticSeverity::Error;

  /// `file:line:col: error: message`
  std::string to_string() const;
};

/// A parsed value, absent whenever any Error diagnostic was produced.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
  std::string error_text() const {
    std::string out;
    for (const auto& d : diagnostics) out += d.to_string() + "\n";
    return out;
  }
};

/// Thrown by the *_or_throw helpers and by file loaders.
class DocumentError : public std::runtime_error {
 public:
  explicit DocumentError(std::vector<ParseDiagnostic> diagnostics);
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

template <typename T>
T value_or_throw(Parsed<T> parsed) {
  if (!parsed.value) throw DocumentError(std::move(parsed.diagnostics));
  return std::move(*parsed.value);
}

// ---------------------------------------------------------------------------
// Ontology and ABox documents (Turtle subset)

/// Parses a TBox+ABox document. Every referenced IRI must be declared in the
/// same document; declarations may follow their first use. Without an
/// ontology header the id is `<default prefix>ontology`, or empty when there
/// is no default prefix either.
Parsed<Ontology> parse_ontology(std::string_view text, std::string_view file = "<input>");

/// Parses ABox assertions against an existing ontology and returns the
/// ontology extended with them. Individuals may be declared explicitly or are
/// declared implicitly by their first assertion; classes and properties must
/// already exist in `tbox`.
Parsed<Ontology> parse_abox(std::string_view text, const Ontology& tbox,
                            std::string_view file = "<input>");

/// Canonical Turtle: prefix header, ontology header, declarations, labels,
/// then axioms, each group in canonical order.
std::string serialize_ontology(const Ontology& o);

// ---------------------------------------------------------------------------
// Alignments

Parsed<Alignment> parse_alignment(std::string_view text, std::string_view file = "<input>");
std::string serialize_alignment(const Alignment& a);

/// Removal log of repair_alignment: `{"removed": [correspondence, ...]}`.
std::string serialize_removals(const std::vector<Correspondence>& removed,
                               const std::vector<Axiom>& removed_axioms);

// ---------------------------------------------------------------------------
// Queries and answers

/// `[PREFIX p: <ns>]* SELECT ?v.. WHERE { atom . ... }`. The empty prefix
/// defaults to the global namespace.
Parsed<ConjunctiveQuery> parse_query(std::string_view text, std::string id,
                                     std::string_view file = "<input>");
std::string serialize_query(const ConjunctiveQuery& q);

Parsed<std::map<std::string, AnswerSet>> parse_reference_answers(std::string_view text,
                                                                 std::string_view file = "<input>");
std::string serialize_reference_answers(const std::map<std::string, AnswerSet>& answers);

Parsed<AnswerSet> parse_answer_set(std::string_view text, std::string_view file = "<input>");
std::string serialize_answer_set(const AnswerSet& a);

// ---------------------------------------------------------------------------
// Merge artifacts

Parsed<std::map<Iri, std::set<LocalRef>>> parse_provenance(std::string_view text,
                                                           std::string_view file = "<input>");
std::string serialize_provenance(const MergedOntology& m);

Parsed<QualityReport> parse_report(std::string_view text, std::string_view file = "<input>");
std::string serialize_report(const QualityReport& r);
/// One line per finding: `SEVERITY category entity,entity — explanation`.
std::string render_report_text(const QualityReport& r);

Parsed<EvaluationResult> parse_evaluation(std::string_view text, std::string_view file = "<input>");
/// Reals rendered with exactly four decimals.
std::string serialize_evaluation(const EvaluationResult& e);

// ---------------------------------------------------------------------------
// Manifest

struct SourceEntry {
  std::string ontology;
  std::vector<std::string> aboxes;

  friend bool operator==(const SourceEntry&, const SourceEntry&) = default;
};

struct Thresholds {
  double theta = kDefaultTheta;
  double tau = kDefaultTau;
  int chain_length = 3;
  int clump_size = 3;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Pipeline configuration. Paths are stored as written and resolved against
/// `base_dir` (the manifest's directory) when loading.
struct Manifest {
  std::vector<SourceEntry> sources;
  std::vector<std::string> alignments;
  /// Either one directory (`queries_is_directory`) or a list of query files.
  std::vector<std::string> queries;
  bool queries_is_directory = false;
  std::optional<std::string> references;
  Thresholds thresholds;
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& path) const;

  friend bool operator==(const Manifest& a, const Manifest& b) {
    return a.sources == b.sources && a.alignments == b.alignments && a.queries == b.queries &&
           a.queries_is_directory == b.queries_is_directory && a.references == b.references &&
           a.thresholds == b.thresholds;
  }
};

Parsed<Manifest> parse_manifest(std::string_view text, std::string_view file = "<input>");
std::string serialize_manifest(const Manifest& m);

// ---------------------------------------------------------------------------
// Files

/// Reads a whole file; throws DocumentError with an I/O diagnostic.
std::string read_file(const std::filesystem::path& path);
/// Creates parent directories; throws DocumentError on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ontmed
