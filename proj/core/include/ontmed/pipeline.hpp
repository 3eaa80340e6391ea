#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontmed/docio.hpp"

namespace ontmed {

/// A failure tagged with the pipeline stage that raised it.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message, int exit_code);
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct PipelineOptions {
  bool repair = true;
  bool strict = false;
  /// Stop after linting; queries are not answered.
  bool merge_only = false;
  std::optional<std::filesystem::path> out_dir;
};

struct QueryOutcome {
  ConjunctiveQuery query;
  AnswerSet answers;
  bool answered = false;
  std::string reason;
};

struct PipelineRun {
  std::vector<Ontology> locals;
  std::vector<Alignment> alignments;
  std::vector<Correspondence> removed_correspondences;
  std::vector<Axiom> removed_axioms;
  MergedOntology merged;
  QualityReport report;
  std::vector<QueryOutcome> outcomes;
  std::optional<EvaluationResult> evaluation;
};

/// One source: its ontology document extended with its ABox documents.
Ontology load_source(const Manifest& manifest, const SourceEntry& entry);

/// Query files named by the manifest, sorted by path. Ids are file stems.
std::vector<ConjunctiveQuery> load_queries(const Manifest& manifest);

/// parse sources, compute or load alignments, repair them, merge, repair
/// redundancies, lint, answer every query and score against references.
/// Artifacts are written to options.out_dir when set. Throws PipelineError.
PipelineRun run_pipeline(const Manifest& manifest, const PipelineOptions& options = {});

/// Writes merged.ttl, provenance.json, quality.json, quality.txt,
/// alignments/, removals.json, answers/ and evaluation.json as available.
void write_artifacts(const PipelineRun& run, const std::filesystem::path& out_dir);

}  // namespace ontmed
