#include <doctest.h>

#include "builders.hpp"
#include "generators.hpp"
#include "ontmed/mediator.hpp"
#include "ontmed/merger.hpp"
#include "oracles.hpp"

using namespace ontmed;
using ontmed::testing::OntoBuilder;

namespace {

const std::string kNs1 = "http://example.org/one#";
const std::string kNs2 = "http://example.org/two#";

Iri g(const std::string& local) { return Iri(kGlobalNamespace, local); }

Term v(const std::string& name) { return Term::var(name); }

std::vector<SourceStore> stores_of(const std::vector<Ontology>& locals) {
  std::vector<SourceStore> out;
  for (const auto& o : locals) out.push_back(SourceStore::from_ontology(o));
  return out;
}

// Two sources naming papers differently, aligned Paper = Article.
struct Papers {
  OntoBuilder o1{kNs1};
  OntoBuilder o2{kNs2};
  std::vector<Ontology> locals;
  MergedOntology m;

  Papers() {
    o1.classes({"Paper", "ShortPaper", "Person"}).properties({"hasAuthor"}).individuals({"p1", "p2", "ann"});
    o1.sub("ShortPaper", "Paper").member("p1", "Paper").member("p2", "ShortPaper").member("ann", "Person");
    o1.fact("p1", "hasAuthor", "ann");
    o2.classes({"Article", "Human"}).properties({"writtenBy"}).individuals({"a1", "bob"});
    o2.member("a1", "Article").member("bob", "Human").fact("a1", "writtenBy", "bob");
    Alignment a{o1.get().id(), o2.get().id(),
                {{o1("Paper"), o2("Article"), Relation::Equivalent, 1.0},
                 {o1("Person"), o2("Human"), Relation::Equivalent, 1.0},
                 {o1("hasAuthor"), o2("writtenBy"), Relation::Equivalent, 1.0}}};
    locals = {o1, o2};
    m = merge(locals, {a});
  }
};

}  // namespace

TEST_CASE("SourceStore indexes assertions") {
  Papers f;
  auto s = SourceStore::from_ontology(f.o1);
  CHECK(s.source() == f.o1.get().id());
  CHECK(s.size() == 4);
  CHECK(s.members_of(f.o1("Paper")) == std::set<Iri>{f.o1("p1")});
  CHECK(s.pairs_of(f.o1("hasAuthor")).size() == 1);
  CHECK(s.members_of(f.o1("Nothing")).empty());
}

TEST_CASE("local evaluation joins atoms with set semantics") {
  SourceStore s(Iri(kNs1, "src"));
  Iri a(kNs1, "a"), b(kNs1, "b"), c(kNs1, "c"), p(kNs1, "p"), C(kNs1, "C");
  s.add_fact(a, p, b);
  s.add_fact(b, p, c);
  s.add_membership(b, C);
  ConjunctiveQuery path{"q", {"x", "z"}, {Atom::property_atom(v("x"), p, v("y")), Atom::property_atom(v("y"), p, v("z"))}};
  CHECK(evaluate_local(path, s) == std::set<Tuple>{{a, c}});
  ConjunctiveQuery typed{"q", {"x"}, {Atom::property_atom(v("x"), p, v("y")), Atom::class_atom(v("y"), C)}};
  CHECK(evaluate_local(typed, s) == std::set<Tuple>{{a}});
  ConjunctiveQuery fixed{"q", {"y"}, {Atom::property_atom(Term::iri(a), p, v("y"))}};
  CHECK(evaluate_local(fixed, s) == std::set<Tuple>{{b}});
  ConjunctiveQuery loop{"q", {"x"}, {Atom::property_atom(v("x"), p, v("x"))}};
  CHECK(evaluate_local(loop, s).empty());
}

TEST_CASE("expansion replaces predicates with their subsumees") {
  Papers f;
  ConjunctiveQuery q{"q", {"x"}, {Atom::class_atom(v("x"), g("Article"))}};
  auto variants = expand_query(q, f.m);
  CHECK(variants.size() == 2);
  std::set<Iri> preds;
  for (const auto& var : variants) preds.insert(var.atoms[0].predicate);
  CHECK(preds == std::set<Iri>{g("Article"), g("ShortPaper")});
}

TEST_CASE("rewriting maps global vocabulary to source preimages") {
  Papers f;
  ConjunctiveQuery q{"q", {"x"}, {Atom::class_atom(v("x"), g("Article"))}};
  auto r1 = rewrite_for_source(q, f.m, f.o1.get().id());
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].atoms[0].predicate == f.o1("Paper"));
  ConjunctiveQuery only1{"q", {"x"}, {Atom::class_atom(v("x"), g("ShortPaper"))}};
  CHECK(rewrite_for_source(only1, f.m, f.o2.get().id()).empty());
}

TEST_CASE("mediated answers combine sources in the global vocabulary") {
  Papers f;
  Mediator med(f.m, stores_of(f.locals));
  ConjunctiveQuery papers{"papers", {"x"}, {Atom::class_atom(v("x"), g("Article"))}};
  CHECK(med.answer(papers).tuples == std::set<Tuple>{{g("a1")}, {g("p1")}, {g("p2")}});

  ConjunctiveQuery authors{"authors",
                           {"x", "y"},
                           {Atom::class_atom(v("x"), g("Article")), Atom::property_atom(v("x"), g("hasAuthor"), v("y"))}};
  CHECK(med.answer(authors).tuples == std::set<Tuple>{{g("a1"), g("bob")}, {g("p1"), g("ann")}});
  CHECK(med.answer(authors).query_id == "authors");
}

TEST_CASE("facts about a shared individual join across sources") {
  OntoBuilder o1(kNs1);
  o1.classes({"Paper"}).individuals({"x"}).member("x", "Paper");
  OntoBuilder o2(kNs2);
  o2.classes({"Doc"}).properties({"cites"}).individuals({"x", "y"}).fact("x", "cites", "y");
  Alignment a{o1.get().id(), o2.get().id(), {{o1("x"), o2("x"), Relation::Equivalent, 1.0}}};
  std::vector<Ontology> locals{o1, o2};
  auto m = merge(locals, {a});
  ConjunctiveQuery q{"q", {"p"}, {Atom::class_atom(v("p"), g("Paper")), Atom::property_atom(v("p"), g("cites"), v("o"))}};
  CHECK(answer_query(q, m, stores_of(locals)).tuples == std::set<Tuple>{{g("x")}});
}

TEST_CASE("query errors") {
  Papers f;
  Mediator med(f.m, stores_of(f.locals));
  SUBCASE("unknown class") {
    ConjunctiveQuery q{"q", {"x"}, {Atom::class_atom(v("x"), g("Nope"))}};
    CHECK_THROWS_AS(med.answer(q), QueryError);
  }
  SUBCASE("property used as class") {
    ConjunctiveQuery q{"q", {"x"}, {Atom::class_atom(v("x"), g("hasAuthor"))}};
    CHECK_THROWS_AS(med.answer(q), QueryError);
  }
  SUBCASE("unsatisfiable class") {
    OntoBuilder o(kNs1);
    o.classes({"A", "B", "C"}).disjoint("A", "B").sub("C", "A").sub("C", "B");
    auto m = merge({o}, {});
    ConjunctiveQuery q{"q", {"x"}, {Atom::class_atom(v("x"), g("C"))}};
    CHECK_THROWS_AS(answer_query(q, m, {}), QueryError);
  }
}

TEST_CASE("mediation agrees with materialization on random federations") {
  testing::Rng rng(41);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    auto f = testing::random_federation(rng);
    auto m = merge(f.locals, f.alignments);
    Mediator med(m, stores_of(f.locals));
    for (int k = 0; k < 3; ++k) {
      auto q = testing::random_global_query(rng, m.global, "q" + std::to_string(k));
      auto expected = testing::materialized_answer(q, m, f.locals);
      if (!expected) {
        CHECK_THROWS_AS(med.answer(q), QueryError);
        continue;
      }
      CHECK(med.answer(q) == *expected);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("answers are stable across store order") {
  testing::Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    auto f = testing::random_federation(rng);
    auto m = merge(f.locals, f.alignments);
    auto stores = stores_of(f.locals);
    auto reversed = stores;
    std::reverse(reversed.begin(), reversed.end());
    auto q = testing::random_global_query(rng, m.global, "q");
    if (!testing::materialized_answer(q, m, f.locals)) continue;
    CHECK(answer_query(q, m, stores) == answer_query(q, m, reversed));
  }
}
