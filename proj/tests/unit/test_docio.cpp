#include <doctest.h>

#include <filesystem>

#include "builders.hpp"
#include "generators.hpp"
#include "ontmed/docio.hpp"
#include "ontmed/pipeline.hpp"

using namespace ontmed;
using ontmed::testing::OntoBuilder;

namespace fs = std::filesystem;

namespace {

const std::string kHeader = "@prefix : <http://example.org/d#> .\n";

Iri d(const std::string& local) { return Iri("http://example.org/d#", local); }

bool has_message(const std::vector<ParseDiagnostic>& diags, const std::string& needle) {
  for (const auto& x : diags) {
    if (x.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

const ParseDiagnostic& first_error(const std::vector<ParseDiagnostic>& diags) {
  for (const auto& x : diags) {
    if (x.severity == DiagnosticSeverity::Error) return x;
  }
  FAIL("no error diagnostic");
  return diags.front();
}

}  // namespace

TEST_CASE("ontology documents") {
  SUBCASE("one class") {
    auto p = parse_ontology(kHeader + ":A rdf:type owl:Class .\n");
    REQUIRE(p.ok());
    CHECK(p.value->classes() == std::vector<Iri>{d("A")});
  }
  SUBCASE("forward references resolve") {
    auto p = parse_ontology(kHeader + ":A rdfs:subClassOf :B .\n:A rdf:type owl:Class .\n:B rdf:type owl:Class .\n");
    REQUIRE(p.ok());
    CHECK(p.value->contains(Axiom::sub_class(d("A"), d("B"))));
  }
  SUBCASE("undeclared entity") {
    auto p = parse_ontology(kHeader + ":A rdf:type owl:Class .\n:A rdfs:subClassOf :B .\n");
    CHECK_FALSE(p.ok());
    CHECK(has_message(p.diagnostics, "undeclared entity :B"));
    const auto& e = first_error(p.diagnostics);
    CHECK(e.line == 3);
    CHECK(e.column == 20);
  }
  SUBCASE("kind mismatch") {
    auto p = parse_ontology(kHeader + ":A rdf:type owl:Class .\n:p rdf:type owl:ObjectProperty .\n:A rdfs:subClassOf :p .\n");
    CHECK_FALSE(p.ok());
    CHECK(has_message(p.diagnostics, "kind mismatch"));
  }
  SUBCASE("conflicting declaration") {
    auto p = parse_ontology(kHeader + ":A rdf:type owl:Class .\n:A rdf:type owl:ObjectProperty .\n");
    CHECK_FALSE(p.ok());
    CHECK(has_message(p.diagnostics, "duplicate conflicting declaration"));
  }
  SUBCASE("unknown predicate") {
    auto p = parse_ontology(kHeader + ":A rdf:type owl:Class .\n:A owl:sameAs :A .\n");
    CHECK_FALSE(p.ok());
  }
  SUBCASE("syntax error carries a position") {
    auto p = parse_ontology(kHeader + ":A rdf:type owl:Class\n");
    CHECK_FALSE(p.ok());
    const auto& e = first_error(p.diagnostics);
    CHECK(e.line >= 2);
    CHECK(e.column >= 1);
    CHECK(e.to_string().find("<input>:") == 0);
  }
  SUBCASE("comments and labels") {
    auto p = parse_ontology(kHeader + "# a comment\n:A rdf:type owl:Class . # trailing\n:A rdfs:label \"say \\\"hi\\\"\" .\n");
    REQUIRE(p.ok());
    CHECK(p.value->find(d("A"))->labels == std::set<std::string>{"say \"hi\""});
  }
}

TEST_CASE("ABox documents extend a TBox") {
  OntoBuilder b("http://example.org/d#");
  b.classes({"Paper"}).properties({"cites"});
  auto p = parse_abox(kHeader + ":x rdf:type :Paper .\n:x :cites :y .\n", b);
  REQUIRE(p.ok());
  CHECK(p.value->contains(Axiom::class_assertion(d("x"), d("Paper"))));
  CHECK(p.value->kind_of(d("y")) == EntityKind::Individual);
  auto bad = parse_abox(kHeader + ":x rdfs:subClassOf :Paper .\n", b);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("ontology serialization is canonical") {
  Ontology empty;
  std::string text = serialize_ontology(empty);
  CHECK(text.find("@prefix") == 0);
  CHECK(text.find("owl:Class") == std::string::npos);

  OntoBuilder b1("http://example.org/d#");
  b1.classes({"B", "A"}).sub("B", "A");
  OntoBuilder b2("http://example.org/d#");
  b2.classes({"A", "B"}).sub("B", "A");
  CHECK(serialize_ontology(b1) == serialize_ontology(b2));
  auto back = parse_ontology(serialize_ontology(b1));
  REQUIRE(back.ok());
  CHECK(*back.value == b1.get());
}

TEST_CASE("alignment documents") {
  std::string text = R"({"onto1": "http://example.org/o1#ontology", "onto2": "http://example.org/o2#ontology",
    "correspondences": [{"e1": "http://example.org/o1#Paper", "e2": "http://example.org/o2#Article", "rel": "=", "conf": 0.95}]})";
  auto a = parse_alignment(text);
  REQUIRE(a.ok());
  REQUIRE(a.value->correspondences.size() == 1);
  CHECK(a.value->correspondences[0].rel == Relation::Equivalent);
  auto again = parse_alignment(serialize_alignment(*a.value));
  REQUIRE(again.ok());
  CHECK(*again.value == *a.value);

  SUBCASE("confidence out of range") {
    std::string bad = text;
    bad.replace(bad.find("0.95"), 4, "1.3");
    auto p = parse_alignment(bad);
    CHECK_FALSE(p.ok());
    const auto& e = first_error(p.diagnostics);
    CHECK(e.line == 2);
  }
  SUBCASE("relation tokens") {
    std::string sub = text;
    sub.replace(sub.find("\"=\""), 3, "\">\"");
    auto p = parse_alignment(sub);
    REQUIRE(p.ok());
    CHECK(p.value->correspondences[0].rel == Relation::Subsumes);
    std::string bad = text;
    bad.replace(bad.find("\"=\""), 3, "\"subsumes\"");
    CHECK_FALSE(parse_alignment(bad).ok());
  }
  SUBCASE("malformed JSON") {
    auto p = parse_alignment("{\"onto1\": ");
    CHECK_FALSE(p.ok());
    CHECK(p.diagnostics.size() == 1);
  }
  SUBCASE("unknown keys warn") {
    std::string extra = text;
    extra.insert(1, "\"note\": 1, ");
    auto p = parse_alignment(extra);
    REQUIRE(p.ok());
    REQUIRE(p.diagnostics.size() == 1);
    CHECK(p.diagnostics[0].severity == DiagnosticSeverity::Warning);
  }
}

TEST_CASE("query documents") {
  SUBCASE("class atom") {
    auto q = parse_query("SELECT ?x WHERE { ?x rdf:type :Paper . }", "q");
    REQUIRE(q.ok());
    REQUIRE(q.value->atoms.size() == 1);
    CHECK(q.value->atoms[0].is_class);
    CHECK(q.value->atoms[0].predicate == Iri(kGlobalNamespace, "Paper"));
    CHECK(q.value->id == "q");
  }
  SUBCASE("property atom") {
    auto q = parse_query("SELECT ?x ?y WHERE { ?x :hasAuthor ?y . }", "q");
    REQUIRE(q.ok());
    CHECK_FALSE(q.value->atoms[0].is_class);
    CHECK(q.value->select == std::vector<std::string>{"x", "y"});
  }
  SUBCASE("unbound select variable") {
    auto q = parse_query("SELECT ?z WHERE { ?x rdf:type :Paper . }", "q");
    CHECK_FALSE(q.ok());
    CHECK(has_message(q.diagnostics, "unbound select variable ?z"));
  }
  SUBCASE("empty body") {
    auto q = parse_query("SELECT ?x WHERE { }", "q");
    CHECK_FALSE(q.ok());
    CHECK(has_message(q.diagnostics, "empty query body"));
  }
  SUBCASE("prefixes and constants") {
    auto q = parse_query("PREFIX ex: <http://example.org/x#>\nselect ?x where { ?x ex:p ex:bob . }", "q");
    REQUIRE(q.ok());
    CHECK(q.value->atoms[0].object == Term::iri(Iri("http://example.org/x#", "bob")));
    auto back = parse_query(serialize_query(*q.value), "q");
    REQUIRE(back.ok());
    CHECK(*back.value == *q.value);
  }
}

TEST_CASE("report documents") {
  CHECK(serialize_report(QualityReport{}) == "{\n  \"findings\": []\n}\n");
  auto empty = parse_report("{\"findings\": []}");
  REQUIRE(empty.ok());
  CHECK(empty.value->findings.empty());

  OntoBuilder b("http://example.org/d#");
  b.classes({"A", "B"}).sub("A", "B").sub("B", "A");
  auto r = lint(b);
  auto back = parse_report(serialize_report(r));
  REQUIRE(back.ok());
  CHECK(*back.value == r);
  std::string text = render_report_text(r);
  CHECK(text.find("ERROR CirculatoryError") != std::string::npos);
}

TEST_CASE("manifest documents") {
  SUBCASE("missing sources") {
    auto m = parse_manifest("{\"queries\": \"q\"}");
    CHECK_FALSE(m.ok());
    CHECK(has_message(m.diagnostics, "sources"));
  }
  SUBCASE("threshold ranges") {
    CHECK_FALSE(parse_manifest(R"({"sources": ["a.ttl"], "queries": [], "thresholds": {"theta": 1.5}})").ok());
    CHECK_FALSE(parse_manifest(R"({"sources": ["a.ttl"], "queries": [], "thresholds": {"chain_length": 1}})").ok());
  }
  SUBCASE("string sources and query directory") {
    auto m = parse_manifest(R"({"sources": ["a.ttl", {"ontology": "b.ttl", "abox": ["b1.ttl"]}], "queries": "qs"})");
    REQUIRE(m.ok());
    CHECK(m.value->sources.size() == 2);
    CHECK(m.value->sources[1].aboxes == std::vector<std::string>{"b1.ttl"});
    CHECK(m.value->queries_is_directory);
    auto back = parse_manifest(serialize_manifest(*m.value));
    REQUIRE(back.ok());
    CHECK(*back.value == *m.value);
  }
}

TEST_CASE("evaluation documents use four decimals") {
  EvaluationResult e = aggregate({{"q1", true, 2.0 / 3.0, 1.0, harmonic_f(2.0 / 3.0, 1.0)}});
  std::string text = serialize_evaluation(e);
  CHECK(text.find("0.6667") != std::string::npos);
  CHECK(text.find("0.8000") != std::string::npos);
}

TEST_CASE("bundled corpus documents round-trip") {
  fs::path dir = ONTMED_CORPUS_DIR;
  auto manifest = value_or_throw(parse_manifest(read_file(dir / "manifest.json"), "manifest.json"));
  manifest.base_dir = dir;
  for (const auto& entry : manifest.sources) {
    auto text = read_file(dir / entry.ontology);
    auto o = value_or_throw(parse_ontology(text, entry.ontology));
    CHECK(value_or_throw(parse_ontology(serialize_ontology(o))) == o);
    auto full = load_source(manifest, entry);
    CHECK(value_or_throw(parse_ontology(serialize_ontology(full))) == full);
  }
  for (const auto& q : load_queries(manifest)) {
    CHECK(value_or_throw(parse_query(serialize_query(q), q.id)) == q);
  }
  auto refs = value_or_throw(parse_reference_answers(read_file(dir / "references.json")));
  CHECK(value_or_throw(parse_reference_answers(serialize_reference_answers(refs))) == refs);
  CHECK(value_or_throw(parse_manifest(serialize_manifest(manifest))) == manifest);
}

TEST_CASE("random documents round-trip") {
  testing::Rng rng(57);
  for (int i = 0; i < 100; ++i) {
    auto o = testing::random_document_ontology(rng);
    auto text = serialize_ontology(o);
    auto back = parse_ontology(text);
    REQUIRE_MESSAGE(back.ok(), back.error_text());
    CHECK(*back.value == o);
    CHECK(serialize_ontology(*back.value) == text);

    auto a = testing::random_alignment(rng);
    CHECK(value_or_throw(parse_alignment(serialize_alignment(a))) == a);
    auto q = testing::random_query_document(rng);
    CHECK(value_or_throw(parse_query(serialize_query(q), q.id)) == q);
    auto s = testing::random_answer_set(rng, "q" + std::to_string(i));
    CHECK(value_or_throw(parse_answer_set(serialize_answer_set(s))) == s);
    auto r = testing::random_report(rng);
    CHECK(value_or_throw(parse_report(serialize_report(r))) == r);
    auto e = testing::random_evaluation(rng);
    CHECK(value_or_throw(parse_evaluation(serialize_evaluation(e))) == e);
    auto m = testing::random_manifest(rng);
    CHECK(value_or_throw(parse_manifest(serialize_manifest(m))) == m);
  }
}

TEST_CASE("file helpers") {
  fs::path dir = fs::temp_directory_path() / "ontmed_docio_test";
  fs::remove_all(dir);
  write_file(dir / "nested" / "f.txt", "hello");
  CHECK(read_file(dir / "nested" / "f.txt") == "hello");
  CHECK_THROWS_AS(read_file(dir / "missing.txt"), DocumentError);
  fs::remove_all(dir);
}
