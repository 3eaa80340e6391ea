#include "ontmed/pipeline.hpp"

#include <algorithm>
#include <set>

namespace ontmed {

PipelineError::PipelineError(std::string stage, const std::string& message, int exit_code)
    : std::runtime_error(stage + ": " + message), stage_(std::move(stage)), exit_code_(exit_code) {}

namespace {

constexpr std::string_view kQueryExtension = ".rq";

/// Runs `body`, turning library exceptions into a PipelineError for `stage`.
template <typename F>
auto staged(const std::string& stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what(), 2);
  }
}

std::vector<Alignment> load_alignments(const Manifest& manifest, const std::vector<Ontology>& locals) {
  std::vector<Alignment> out;
  std::set<Iri> ids;
  for (const auto& o : locals) ids.insert(o.id());
  for (const auto& path : manifest.alignments) {
    auto resolved = manifest.resolve(path);
    Alignment a = value_or_throw(parse_alignment(read_file(resolved), resolved.string()));
    for (const Iri* id : {&a.onto1, &a.onto2}) {
      if (!ids.contains(*id)) {
        throw PipelineError("align", resolved.string() + ": ontology " + id->str() + " is not a source", 2);
      }
    }
    a.normalize();
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Alignment> compute_alignments(const std::vector<Ontology>& locals, double theta) {
  std::vector<Alignment> out;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    for (std::size_t j = i + 1; j < locals.size(); ++j) {
      out.push_back(compute_alignment(locals[i], locals[j], theta));
    }
  }
  return out;
}

}  // namespace

Ontology load_source(const Manifest& manifest, const SourceEntry& entry) {
  auto path = manifest.resolve(entry.ontology);
  Ontology o = value_or_throw(parse_ontology(read_file(path), path.string()));
  if (o.id().empty()) {
    throw DocumentError({{path.string(), 1, 1,
                          "missing ontology header '<iri> rdf:type owl:Ontology .' and no default prefix",
                          DiagnosticSeverity::Error}});
  }
  for (const auto& abox : entry.aboxes) {
    auto abox_path = manifest.resolve(abox);
    o = value_or_throw(parse_abox(read_file(abox_path), o, abox_path.string()));
  }
  return o;
}

std::vector<ConjunctiveQuery> load_queries(const Manifest& manifest) {
  std::vector<std::filesystem::path> files;
  if (manifest.queries_is_directory) {
    for (const auto& dir : manifest.queries) {
      auto resolved = manifest.resolve(dir);
      std::error_code ec;
      std::filesystem::directory_iterator it(resolved, ec);
      if (ec) {
        throw DocumentError({{resolved.string(), 1, 1, "cannot list query directory", DiagnosticSeverity::Error}});
      }
      for (const auto& entry : it) {
        if (entry.is_regular_file() && entry.path().extension() == kQueryExtension) files.push_back(entry.path());
      }
    }
  } else {
    for (const auto& f : manifest.queries) files.push_back(manifest.resolve(f));
  }
  std::sort(files.begin(), files.end());

  std::vector<ConjunctiveQuery> out;
  std::set<std::string> ids;
  for (const auto& f : files) {
    std::string id = f.stem().string();
    if (!ids.insert(id).second) {
      throw DocumentError({{f.string(), 1, 1, "duplicate query id '" + id + "'", DiagnosticSeverity::Error}});
    }
    out.push_back(value_or_throw(parse_query(read_file(f), id, f.string())));
  }
  return out;
}

PipelineRun run_pipeline(const Manifest& manifest, const PipelineOptions& options) {
  if (manifest.sources.empty()) throw PipelineError("parse", "manifest lists no sources", 2);
  PipelineRun run;

  staged("parse", [&] {
    std::set<Iri> ids;
    for (const auto& entry : manifest.sources) {
      run.locals.push_back(load_source(manifest, entry));
      if (!ids.insert(run.locals.back().id()).second) {
        throw PipelineError("parse", "two sources share the ontology id " + run.locals.back().id().str(), 2);
      }
    }
  });

  staged("align", [&] {
    run.alignments = manifest.alignments.empty() ? compute_alignments(run.locals, manifest.thresholds.theta)
                                                 : load_alignments(manifest, run.locals);
    if (options.repair) {
      auto repaired = repair_alignment(run.locals, std::move(run.alignments), manifest.thresholds.tau);
      run.alignments = std::move(repaired.alignments);
      run.removed_correspondences = std::move(repaired.removed);
    }
  });

  staged("merge", [&] {
    run.merged = merge(run.locals, run.alignments);
    if (options.repair) {
      try {
        auto repaired = repair_redundancies(run.merged.global);
        run.merged.global = std::move(repaired.ontology);
        run.removed_axioms = std::move(repaired.removed);
      } catch (const RepairRefused&) {
        // Cycles stay in place and are reported by the lint stage.
      }
    }
  });

  staged("lint", [&] {
    LintThresholds t{manifest.thresholds.chain_length, manifest.thresholds.clump_size};
    run.report = lint(run.merged.global, t);
  });

  auto write_if_requested = [&] {
    if (options.out_dir) staged("write", [&] { write_artifacts(run, *options.out_dir); });
  };

  if (options.strict && run.report.has_errors()) {
    write_if_requested();
    throw PipelineError("lint", std::to_string(run.report.count(Severity::Error)) +
                                    " error-severity finding(s) in the merged ontology",
                        1);
  }
  if (options.merge_only) {
    write_if_requested();
    return run;
  }

  auto queries = staged("query", [&] { return load_queries(manifest); });
  staged("query", [&] {
    std::vector<SourceStore> stores;
    for (const auto& o : run.locals) stores.push_back(SourceStore::from_ontology(o));
    Mediator mediator(run.merged, std::move(stores));
    for (auto& q : queries) {
      QueryOutcome outcome{q, AnswerSet{q.id, {}}, false, {}};
      try {
        outcome.answers = mediator.answer(q);
        outcome.answered = true;
      } catch (const QueryError& e) {
        outcome.reason = e.what();
      }
      run.outcomes.push_back(std::move(outcome));
    }
  });

  if (manifest.references) {
    staged("eval", [&] {
      auto path = manifest.resolve(*manifest.references);
      auto refs = value_or_throw(parse_reference_answers(read_file(path), path.string()));
      if (run.outcomes.empty()) throw PipelineError("eval", "no queries to score", 2);
      std::vector<QueryScore> scores;
      for (const auto& o : run.outcomes) {
        auto it = refs.find(o.query.id);
        if (it == refs.end()) {
          throw PipelineError("eval", "no reference answers for query '" + o.query.id + "'", 2);
        }
        scores.push_back(score_query(o.answers, it->second, o.answered));
      }
      run.evaluation = aggregate(scores);
    });
  }

  write_if_requested();
  return run;
}

void write_artifacts(const PipelineRun& run, const std::filesystem::path& out_dir) {
  write_file(out_dir / "merged.ttl", serialize_ontology(run.merged.global));
  write_file(out_dir / "provenance.json", serialize_provenance(run.merged));
  write_file(out_dir / "quality.json", serialize_report(run.report));
  write_file(out_dir / "quality.txt", render_report_text(run.report));
  for (std::size_t i = 0; i < run.alignments.size(); ++i) {
    write_file(out_dir / "alignments" / ("alignment-" + std::to_string(i + 1) + ".json"),
               serialize_alignment(run.alignments[i]));
  }
  write_file(out_dir / "removals.json", serialize_removals(run.removed_correspondences, run.removed_axioms));
  for (const auto& o : run.outcomes) {
    write_file(out_dir / "answers" / (o.query.id + ".json"), serialize_answer_set(o.answers));
  }
  if (run.evaluation) write_file(out_dir / "evaluation.json", serialize_evaluation(*run.evaluation));
}

}  // namespace ontmed
