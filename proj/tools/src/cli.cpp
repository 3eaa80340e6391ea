#include "ontmed_cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "ontmed/docio.hpp"
#include "ontmed/pipeline.hpp"

namespace ontmed::cli {

namespace {

namespace fs = std::filesystem;

struct ThresholdFlags {
  double theta = kDefaultTheta;
  double tau = kDefaultTau;
  int chain_length = 3;
  int clump_size = 3;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* chain_opt = nullptr;
  CLI::Option* clump_opt = nullptr;

  void add_alignment(CLI::App& cmd) {
    theta_opt = cmd.add_option("--theta", theta, "Name-similarity threshold in [0, 1]")
                    ->check(CLI::Range(0.0, 1.0));
    tau_opt = cmd.add_option("--tau", tau, "Locality threshold in [0, 1]")->check(CLI::Range(0.0, 1.0));
  }
  void add_lint(CLI::App& cmd) {
    chain_opt = cmd.add_option("--chain-length", chain_length, "Chain-of-inheritance length (>= 2)")
                    ->check(CLI::Range(2, 1000000));
    clump_opt = cmd.add_option("--clump-size", clump_size, "Property-clump size (>= 2)")
                    ->check(CLI::Range(2, 1000000));
  }

  /// Flags override manifest values.
  void apply(Thresholds& t) const {
    if (theta_opt && theta_opt->count() > 0) t.theta = theta;
    if (tau_opt && tau_opt->count() > 0) t.tau = tau;
    if (chain_opt && chain_opt->count() > 0) t.chain_length = chain_length;
    if (clump_opt && clump_opt->count() > 0) t.clump_size = clump_size;
  }
};

std::optional<fs::path> default_out(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  if (const char* env = std::getenv("ONTMED_OUT"); env != nullptr && *env != '\0') return fs::path(env);
  return std::nullopt;
}

void print_diagnostics(const std::vector<ParseDiagnostic>& diags, std::ostream& err) {
  for (const auto& d : diags) err << d.to_string() << "\n";
}

Manifest load_manifest(const std::string& path) {
  return value_or_throw(parse_manifest(read_file(path), path));
}

// ---------------------------------------------------------------------------

struct LintArgs {
  std::string path;
  bool json = false;
  bool text = false;
  bool strict = false;
  ThresholdFlags thresholds;
};

int cmd_lint(const LintArgs& a, std::ostream& out, std::ostream& err) {
  auto parsed = parse_ontology(read_file(a.path), a.path);
  if (!parsed) {
    print_diagnostics(parsed.diagnostics, err);
    return kExitUsage;
  }
  Thresholds t;
  a.thresholds.apply(t);
  auto report = lint(*parsed.value, LintThresholds{t.chain_length, t.clump_size});
  out << (a.json ? serialize_report(report) : render_report_text(report));
  if (a.strict && report.has_errors()) {
    err << "lint: " << report.count(Severity::Error) << " error-severity finding(s)\n";
    return kExitStrict;
  }
  return kExitOk;
}

struct AlignArgs {
  std::string o1;
  std::string o2;
  std::string out;
  ThresholdFlags thresholds;
};

int cmd_align(const AlignArgs& a, std::ostream& out, std::ostream&) {
  auto o1 = value_or_throw(parse_ontology(read_file(a.o1), a.o1));
  auto o2 = value_or_throw(parse_ontology(read_file(a.o2), a.o2));
  if (o1.id() == o2.id()) {
    throw PipelineError("align", "both ontologies have the id " + o1.id().str(), kExitUsage);
  }
  Thresholds t;
  a.thresholds.apply(t);
  auto text = serialize_alignment(compute_alignment(o1, o2, t.theta));
  if (!a.out.empty()) {
    write_file(a.out, text);
  } else if (auto dir = default_out("")) {
    write_file(*dir / "alignment.json", text);
  } else {
    out << text;
  }
  return kExitOk;
}

struct ManifestArgs {
  std::string manifest;
  std::string out;
  bool no_repair = false;
  bool strict = false;
  ThresholdFlags thresholds;
};

int cmd_merge(const ManifestArgs& a, std::ostream& out, std::ostream& err) {
  auto dir = default_out(a.out);
  if (!dir) {
    err << "merge: an output directory is required (--out or ONTMED_OUT)\n";
    return kExitUsage;
  }
  Manifest m = load_manifest(a.manifest);
  a.thresholds.apply(m.thresholds);
  PipelineOptions options;
  options.repair = !a.no_repair;
  options.strict = a.strict;
  options.merge_only = true;
  options.out_dir = *dir;
  auto run = run_pipeline(m, options);
  out << render_report_text(run.report);
  return kExitOk;
}

int cmd_eval(const ManifestArgs& a, std::ostream& out, std::ostream&) {
  Manifest m = load_manifest(a.manifest);
  if (!m.references) throw PipelineError("eval", "references required for eval", kExitUsage);
  a.thresholds.apply(m.thresholds);
  PipelineOptions options;
  options.repair = !a.no_repair;
  options.strict = a.strict;
  options.out_dir = default_out(a.out);
  auto run = run_pipeline(m, options);
  out << serialize_evaluation(*run.evaluation);
  return kExitOk;
}

struct QueryArgs {
  std::string merged_dir;
  std::string query;
  std::vector<std::string> aboxes;
};

/// Rebuilds one local vocabulary per source from the merged schema and its
/// provenance, so ABox documents can be checked against it.
std::map<Iri, Ontology> source_skeletons(const MergedOntology& m) {
  std::map<Iri, Ontology> out;
  for (const auto& [global, refs] : m.provenance) {
    auto kind = m.global.kind_of(global);
    if (!kind) throw PipelineError("query", "provenance names unknown entity " + global.str(), kExitUsage);
    for (const auto& [source, local] : refs) {
      auto [it, inserted] = out.try_emplace(source, Ontology(source));
      it->second.declare(*kind, local);
    }
  }
  return out;
}

int cmd_query(const QueryArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir(a.merged_dir);
  const auto ttl = (dir / "merged.ttl").string();
  const auto prov = (dir / "provenance.json").string();
  MergedOntology merged;
  merged.global = value_or_throw(parse_ontology(read_file(ttl), ttl));
  merged.provenance = value_or_throw(parse_provenance(read_file(prov), prov));
  merged.reindex();

  auto sources = source_skeletons(merged);
  for (const auto& path : a.aboxes) {
    const std::string text = read_file(path);
    std::vector<Iri> matches;
    std::optional<Ontology> extended;
    for (const auto& [id, local] : sources) {
      auto parsed = parse_abox(text, local, path);
      if (parsed) {
        matches.push_back(id);
        extended = std::move(parsed.value);
      }
    }
    if (matches.empty()) {
      err << path << ":1:1: error: vocabulary matches no source of the merged ontology\n";
      return kExitUsage;
    }
    if (matches.size() > 1) {
      err << path << ":1:1: error: vocabulary matches several sources (" << matches[0].str() << ", "
          << matches[1].str() << ")\n";
      return kExitUsage;
    }
    sources[matches.front()] = std::move(*extended);
  }

  std::vector<SourceStore> stores;
  for (const auto& [id, local] : sources) stores.push_back(SourceStore::from_ontology(local));
  const std::string id = fs::path(a.query).stem().string();
  auto q = value_or_throw(parse_query(read_file(a.query), id, a.query));
  try {
    out << serialize_answer_set(Mediator(merged, std::move(stores)).answer(q));
  } catch (const QueryError& e) {
    err << "query: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ontology mediation: align, merge, lint, query and evaluate federated ontologies", "ontmed"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ontmed 0.1.0");

  LintArgs lint_args;
  auto* lint_cmd = app.add_subcommand("lint", "Report quality findings for one ontology");
  lint_cmd->add_option("ontology", lint_args.path, "Ontology document")->required();
  auto* json_flag = lint_cmd->add_flag("--json", lint_args.json, "JSON report");
  lint_cmd->add_flag("--text", lint_args.text, "Text report (default)")->excludes(json_flag);
  lint_cmd->add_flag("--strict", lint_args.strict, "Exit 1 on any Error-severity finding");
  lint_args.thresholds.add_lint(*lint_cmd);

  AlignArgs align_args;
  auto* align_cmd = app.add_subcommand("align", "Compute a lexical alignment between two ontologies");
  align_cmd->add_option("onto1", align_args.o1, "First ontology")->required();
  align_cmd->add_option("onto2", align_args.o2, "Second ontology")->required();
  align_cmd->add_option("--out", align_args.out, "Alignment file (default: stdout)");
  align_args.thresholds.add_alignment(*align_cmd);

  ManifestArgs merge_args;
  auto* merge_cmd = app.add_subcommand("merge", "Align, repair and merge the sources of a manifest");
  merge_cmd->add_option("manifest", merge_args.manifest, "Manifest file")->required();
  merge_cmd->add_option("--out", merge_args.out, "Output directory");
  merge_cmd->add_flag("--no-repair", merge_args.no_repair, "Skip alignment and redundancy repair");
  merge_cmd->add_flag("--strict", merge_args.strict, "Exit 1 on any Error-severity finding");
  merge_args.thresholds.add_alignment(*merge_cmd);
  merge_args.thresholds.add_lint(*merge_cmd);

  QueryArgs query_args;
  auto* query_cmd = app.add_subcommand("query", "Answer a global query over a merged federation");
  query_cmd->add_option("merged", query_args.merged_dir, "Directory written by merge")->required();
  query_cmd->add_option("query", query_args.query, "Query file")->required();
  query_cmd->add_option("aboxes", query_args.aboxes, "ABox documents");

  ManifestArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Run the full pipeline and score answers");
  eval_cmd->add_option("manifest", eval_args.manifest, "Manifest file")->required();
  eval_cmd->add_option("--out", eval_args.out, "Output directory for artifacts");
  eval_cmd->add_flag("--no-repair", eval_args.no_repair, "Skip alignment and redundancy repair");
  eval_cmd->add_flag("--strict", eval_args.strict, "Exit 1 on any Error-severity finding");
  eval_args.thresholds.add_alignment(*eval_cmd);
  eval_args.thresholds.add_lint(*eval_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (lint_cmd->parsed()) return cmd_lint(lint_args, out, err);
    if (align_cmd->parsed()) return cmd_align(align_args, out, err);
    if (merge_cmd->parsed()) return cmd_merge(merge_args, out, err);
    if (query_cmd->parsed()) return cmd_query(query_args, out, err);
    if (eval_cmd->parsed()) return cmd_eval(eval_args, out, err);
  } catch (const PipelineError& e) {
    err << e.what() << "\n";
    return e.exit_code();
  } catch (const DocumentError& e) {
    print_diagnostics(e.diagnostics(), err);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ontmed::cli
