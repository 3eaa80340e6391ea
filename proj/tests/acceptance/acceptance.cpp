// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "builders.hpp"
#include "generators.hpp"
#include "ontmed/aligner.hpp"
#include "ontmed/docio.hpp"
#include "ontmed/evaluator.hpp"
#include "ontmed/mediator.hpp"
#include "ontmed/merger.hpp"
#include "ontmed/pipeline.hpp"
#include "ontmed/quality.hpp"
#include "ontmed/reasoning.hpp"
#include "oracles.hpp"

#ifdef ONTMED_WITH_CLI
#include "ontmed_cli/cli.hpp"
#endif

using namespace ontmed;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0 means no time limit
  std::function<Outcome()> body;
};

constexpr int kRandomCases = 500;
constexpr int kFederations = 200;
const std::string kNs = "http://example.org/acc#";

fs::path corpus() { return ONTMED_CORPUS_DIR; }

Manifest corpus_manifest() {
  auto m = value_or_throw(parse_manifest(read_file(corpus() / "manifest.json")));
  m.base_dir = corpus();
  return m;
}

Outcome table_arithmetic() {
  struct Row {
    const char* system;
    double p, r, f;
  };
  const Row rows[] = {{"DKPAOM", 0.67, 0.62, 0.64}, {"AML", 0.78, 0.75, 0.76}, {"LogMap", 0.75, 0.75, 0.75}};
  Outcome out;
  for (const auto& row : rows) {
    double f = round_half_up(harmonic_f(row.p, row.r), 2);
    bool match = std::abs(f - row.f) < 1e-12;
    out.ok = out.ok && match;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %.2f", out.detail.empty() ? "" : ", ", row.system, f);
    out.detail += buf;
  }
  return out;
}

Outcome closure_oracle() {
  testing::Rng rng(1001);
  int mismatches = 0;
  for (int i = 0; i < kRandomCases; ++i) {
    Ontology o = testing::random_ontology(rng, kNs);
    if (subsumption_closure(o) != testing::floyd_closure(o)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(kRandomCases) + " ontologies, " + std::to_string(mismatches) + " mismatches"};
}

Outcome redundancy_repair() {
  testing::Rng rng(1002);
  testing::OntologyShape shape;
  shape.dag = true;
  shape.individuals = true;
  int violations = 0;
  int removed = 0;
  for (int i = 0; i < kRandomCases; ++i) {
    Ontology o = testing::random_ontology(rng, kNs, shape);
    auto r = repair_redundancies(o);
    removed += static_cast<int>(r.removed.size());
    bool same_closure = testing::floyd_closure(r.ontology) == testing::floyd_closure(o);
    auto after = detect_redundancy(r.ontology);
    bool clean = std::none_of(after.begin(), after.end(), [](const Finding& f) {
      return f.category == Category::RedundantSubsumption || f.category == Category::RedundantInstantiation;
    });
    bool reduced = testing::naive_redundant_subsumptions(r.ontology).empty();
    if (!same_closure || !clean || !reduced) ++violations;
  }
  return {violations == 0, std::to_string(kRandomCases) + " DAGs, " + std::to_string(removed) +
                               " axioms removed, " + std::to_string(violations) + " violations"};
}

Outcome circularity_oracle() {
  testing::Rng rng(1001);
  int mismatches = 0;
  int cyclic = 0;
  for (int i = 0; i < kRandomCases; ++i) {
    Ontology o = testing::random_ontology(rng, kNs);
    std::set<std::vector<Iri>> found;
    for (const auto& f : detect_circulatory(o)) found.insert(f.entities);
    auto expected = testing::kosaraju_cycles(o);
    if (!expected.empty()) ++cyclic;
    if (found != expected) ++mismatches;
  }
  return {mismatches == 0, std::to_string(kRandomCases) + " ontologies (" + std::to_string(cyclic) + " cyclic), " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome mediation_oracle() {
  testing::Rng rng(1005);
  int mismatches = 0;
  int queries = 0;
  int nonempty = 0;
  int refused = 0;
  for (int i = 0; i < kFederations; ++i) {
    auto fed = testing::random_federation(rng);
    auto m = merge(fed.locals, fed.alignments);
    std::vector<SourceStore> stores;
    for (const auto& o : fed.locals) stores.push_back(SourceStore::from_ontology(o));
    Mediator med(m, stores);
    for (int k = 0; k < 3; ++k) {
      auto q = testing::random_global_query(rng, m.global, "q" + std::to_string(k));
      auto expected = testing::materialized_answer(q, m, fed.locals);
      ++queries;
      if (!expected) ++refused;
      if (expected && !expected->tuples.empty()) ++nonempty;
      try {
        auto got = med.answer(q);
        if (!expected || got != *expected) ++mismatches;
      } catch (const QueryError&) {
        if (expected) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(kFederations) + " federations, " + std::to_string(queries) + " queries (" +
                               std::to_string(nonempty) + " non-empty, " + std::to_string(refused) +
                               " unanswerable), " + std::to_string(mismatches) + " mismatches"};
}

Outcome principle_baselines() {
  using testing::OntoBuilder;
  const std::string ns1 = "http://example.org/one#";
  const std::string ns2 = "http://example.org/two#";
  Outcome out;
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.detail += (out.detail.empty() ? "" : "; ") + why;
  };

  testing::Rng rng(1006);
  for (int i = 0; i < kRandomCases; ++i) {
    auto fed = testing::random_federation(rng);
    if (!check_conservativity_principle(fed.locals, {}).empty()) {
      fail("conservativity violation with empty alignments");
      break;
    }
    if (!check_consistency_principle(fed.locals, {}).empty()) {
      fail("consistency violation with empty alignments");
      break;
    }
  }

  OntoBuilder m1(ns1), m2(ns2);
  m1.classes({"Man", "Woman"}).disjoint("Man", "Woman");
  m2.classes({"Person", "Human"}).sub("Person", "Human");
  Alignment mw{m1.get().id(), m2.get().id(),
               {{m1("Man"), m2("Person"), Relation::Equivalent, 1.0}, {m1("Woman"), m2("Human"), Relation::Equivalent, 0.9}}};
  std::vector<Ontology> mw_locals{m1, m2};
  if (check_consistency_principle(mw_locals, {mw}).size() != 1) fail("Man/Woman: expected 1 violation");
  auto mw_fix = repair_alignment(mw_locals, {mw});
  if (mw_fix.removed.size() != 1 || mw_fix.removed[0].conf != 0.9 || !check_all_principles(mw_locals, mw_fix.alignments).empty()) {
    fail("Man/Woman: repair did not remove the 0.9 correspondence");
  }

  OntoBuilder c1(ns1), c2(ns2);
  c1.classes({"A", "B"});
  c2.classes({"X", "Y"}).sub("X", "Y");
  Alignment ab{c1.get().id(), c2.get().id(),
               {{c1("A"), c2("X"), Relation::Equivalent, 0.95}, {c1("B"), c2("Y"), Relation::Equivalent, 0.8}}};
  std::vector<Ontology> ab_locals{c1, c2};
  if (check_conservativity_principle(ab_locals, {ab}).size() != 1) fail("A/B collapse: expected 1 violation");
  auto ab_fix = repair_alignment(ab_locals, {ab});
  if (ab_fix.removed.size() != 1 || ab_fix.removed[0].conf != 0.8 || !check_all_principles(ab_locals, ab_fix.alignments).empty()) {
    fail("A/B collapse: repair did not remove the 0.8 correspondence");
  }
  if (out.ok) out.detail = std::to_string(kRandomCases) + " empty-alignment corpora clean; both examples repaired";
  return out;
}

Outcome end_to_end() {
  auto run = run_pipeline(corpus_manifest());
  if (!run.evaluation) return {false, "no evaluation produced"};
  const auto& e = *run.evaluation;
  auto four = [](double x) { return round_half_up(x, 4); };
  bool ok = e.answered_count == 5 && e.total_queries == 5 && four(e.avg_precision) == 1.0 &&
            four(e.avg_recall) == 1.0 && four(e.avg_fmeasure) == 1.0 && !run.report.has_errors();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu answered, P=%.4f R=%.4f F=%.4f, %zu error findings", e.answered_count,
                e.total_queries, e.avg_precision, e.avg_recall, e.avg_fmeasure, run.report.count(Severity::Error));
  return {ok, buf};
}

#ifdef ONTMED_WITH_CLI

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) out[fs::relative(entry.path(), dir).string()] = read_file(entry.path());
  }
  return out;
}

Outcome cli_determinism() {
  unsetenv("ONTMED_OUT");
  fs::path base = fs::temp_directory_path() / "ontmed_acceptance_determinism";
  fs::remove_all(base);
  const std::string manifest = (corpus() / "manifest.json").string();
  const std::string cmt = (corpus() / "cmt.ttl").string();
  const std::string ekaw = (corpus() / "ekaw.ttl").string();

  // The query command reads a merge directory; both runs share one.
  fs::path shared = base / "shared";
  auto commands = [&](const fs::path& root) -> std::vector<std::vector<std::string>> {
    std::vector<std::vector<std::string>> out{
        {"lint", cmt},
        {"lint", ekaw, "--json"},
        {"align", cmt, ekaw, "--out", (root / "align" / "alignment.json").string()},
        {"merge", manifest, "--out", (root / "merge").string()},
        {"eval", manifest, "--out", (root / "eval").string()},
    };
    for (const auto& entry : fs::directory_iterator(corpus() / "queries")) {
      out.push_back({"query", shared.string(), entry.path().string(),
                     (corpus() / "cmt_abox.ttl").string(), (corpus() / "ekaw_abox.ttl").string()});
    }
    return out;
  };

  {
    std::ostringstream o, e;
    if (cli::run({"merge", manifest, "--out", shared.string()}, o, e) != cli::kExitOk) return {false, "merge failed"};
  }

  std::vector<std::map<std::string, std::string>> runs;
  std::vector<std::vector<std::string>> stdouts;
  int failures = 0;
  std::size_t files = 0;
  for (const char* name : {"run1", "run2"}) {
    fs::path root = base / name;
    std::vector<std::string> outs;
    for (const auto& args : commands(root)) {
      std::ostringstream o, e;
      if (cli::run(args, o, e) != cli::kExitOk) ++failures;
      outs.push_back(o.str());
    }
    stdouts.push_back(outs);
    runs.push_back(snapshot(root));
    files = runs.back().size();
  }
  fs::remove_all(base);
  bool ok = failures == 0 && stdouts[0] == stdouts[1] && runs[0] == runs[1] && files > 0;
  return {ok, std::to_string(stdouts[0].size()) + " commands, " + std::to_string(files) + " files, " +
                  std::to_string(failures) + " failed invocations"};
}

#endif

Outcome round_trips() {
  int failures = 0;
  int documents = 0;
  auto check = [&](bool ok) {
    ++documents;
    if (!ok) ++failures;
  };

  auto m = corpus_manifest();
  for (const auto& entry : m.sources) {
    auto o = value_or_throw(parse_ontology(read_file(corpus() / entry.ontology)));
    check(value_or_throw(parse_ontology(serialize_ontology(o))) == o);
    auto full = load_source(m, entry);
    check(value_or_throw(parse_ontology(serialize_ontology(full))) == full);
  }
  for (const auto& q : load_queries(m)) check(value_or_throw(parse_query(serialize_query(q), q.id)) == q);
  auto refs = value_or_throw(parse_reference_answers(read_file(corpus() / "references.json")));
  check(value_or_throw(parse_reference_answers(serialize_reference_answers(refs))) == refs);
  check(value_or_throw(parse_manifest(serialize_manifest(m))) == m);

  testing::Rng rng(1009);
  for (int i = 0; i < kRandomCases; ++i) {
    auto o = testing::random_document_ontology(rng);
    auto text = serialize_ontology(o);
    auto back = parse_ontology(text);
    check(back.ok() && *back.value == o && serialize_ontology(*back.value) == text);
    auto a = testing::random_alignment(rng);
    check(value_or_throw(parse_alignment(serialize_alignment(a))) == a);
    auto q = testing::random_query_document(rng);
    check(value_or_throw(parse_query(serialize_query(q), q.id)) == q);
    auto s = testing::random_answer_set(rng, "q" + std::to_string(i));
    check(value_or_throw(parse_answer_set(serialize_answer_set(s))) == s);
    auto r = testing::random_report(rng);
    check(value_or_throw(parse_report(serialize_report(r))) == r);
    auto e = testing::random_evaluation(rng);
    check(value_or_throw(parse_evaluation(serialize_evaluation(e))) == e);
    auto mf = testing::random_manifest(rng);
    check(value_or_throw(parse_manifest(serialize_manifest(mf))) == mf);
  }
  return {failures == 0, std::to_string(documents) + " documents, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "published F-measure arithmetic", 0.0, table_arithmetic},
      {2, "closure equals brute-force reachability", 5.0, closure_oracle},
      {3, "redundancy repair preserves closure and leaves no redundancy", 5.0, redundancy_repair},
      {4, "circulatory detection equals Kosaraju SCCs", 0.0, circularity_oracle},
      {5, "mediation equals materialized evaluation", 10.0, mediation_oracle},
      {6, "principle-check baselines", 0.0, principle_baselines},
      {7, "mini-corpus end to end", 2.0, end_to_end},
#ifdef ONTMED_WITH_CLI
      {8, "CLI determinism", 0.0, cli_determinism},
#else
      {8, "CLI determinism", 0.0, [] { return Outcome{false, "built without the CLI"}; }},
#endif
      {9, "format round-trips", 0.0, round_trips},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && seconds >= c.limit_seconds) {
      o.ok = false;
      o.detail += "; over the time limit";
    }
    if (!o.ok) ++failed;
    char timing[64];
    if (c.limit_seconds > 0.0) {
      std::snprintf(timing, sizeof timing, "%.3fs, limit %.0fs", seconds, c.limit_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.3fs", seconds);
    }
    std::printf("[%s] %d %s: %s (%s)\n", o.ok ? "PASS" : "FAIL", c.number, c.title.c_str(), o.detail.c_str(), timing);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
