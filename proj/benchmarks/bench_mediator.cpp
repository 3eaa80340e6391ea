#include <benchmark/benchmark.h>

#include "ontmed/mediator.hpp"
#include "ontmed/merger.hpp"

namespace {

using namespace ontmed;

// Two sources with mirrored schemas Paper <- ShortPaper, `n` papers each with one
// author; individuals named alike are aligned so facts join across sources.
struct Federation {
  std::vector<Ontology> locals;
  std::vector<Alignment> alignments;
};

Federation federation(int n) {
  Federation f;
  for (const char* ns : {"http://bench.example.org/s1#", "http://bench.example.org/s2#"}) {
    Ontology o(Iri(ns, "ontology"));
    for (const char* c : {"Paper", "ShortPaper", "Person"}) o.declare(EntityKind::Class, Iri(ns, c));
    o.declare(EntityKind::ObjectProperty, Iri(ns, "hasAuthor"));
    o.add(Axiom::sub_class(Iri(ns, "ShortPaper"), Iri(ns, "Paper")));
    for (int i = 0; i < n; ++i) {
      Iri paper(ns, "p" + std::to_string(i));
      Iri person(ns, "a" + std::to_string(i % 17));
      o.declare(EntityKind::Individual, paper);
      o.declare(EntityKind::Individual, person);
      o.add(Axiom::class_assertion(paper, Iri(ns, i % 3 ? "Paper" : "ShortPaper")));
      o.add(Axiom::class_assertion(person, Iri(ns, "Person")));
      o.add(Axiom::property_assertion(paper, Iri(ns, "hasAuthor"), person));
    }
    f.locals.push_back(std::move(o));
  }
  Alignment a{f.locals[0].id(), f.locals[1].id(), {}};
  for (const auto& [iri, e] : f.locals[0].entities()) {
    Iri other("http://bench.example.org/s2#", std::string(iri.local()));
    if (f.locals[1].contains(other)) a.correspondences.push_back({iri, other, Relation::Equivalent, 1.0});
  }
  a.normalize();
  f.alignments.push_back(std::move(a));
  return f;
}

void BM_Merge(benchmark::State& state) {
  Federation f = federation(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(merge(f.locals, f.alignments));
}
BENCHMARK(BM_Merge)->RangeMultiplier(4)->Range(16, 1024);

void BM_AnswerJoinQuery(benchmark::State& state) {
  Federation f = federation(static_cast<int>(state.range(0)));
  MergedOntology m = merge(f.locals, f.alignments);
  std::vector<SourceStore> stores;
  for (const auto& o : f.locals) stores.push_back(SourceStore::from_ontology(o));
  Mediator mediator(m, stores);
  const Iri paper(kGlobalNamespace, "Paper");
  const Iri person(kGlobalNamespace, "Person");
  const Iri has_author(kGlobalNamespace, "hasAuthor");
  ConjunctiveQuery q{"bench",
                     {"p", "a"},
                     {Atom::class_atom(Term::var("p"), paper),
                      Atom::property_atom(Term::var("p"), has_author, Term::var("a")),
                      Atom::class_atom(Term::var("a"), person)}};
  for (auto _ : state) benchmark::DoNotOptimize(mediator.answer(q));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AnswerJoinQuery)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace
