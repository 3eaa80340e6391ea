#include <benchmark/benchmark.h>

#include <random>

#include "ontmed/aligner.hpp"

namespace {

using namespace ontmed;

const char* kStems[] = {"Paper", "Review", "Author", "Reviewer", "Conference", "Workshop",
                        "Organisation", "Person", "Document", "Event", "Topic", "Chair"};

Ontology named(const std::string& ns, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> stem(0, std::size(kStems) - 1);
  Ontology o(Iri(ns, "ontology"));
  for (int i = 0; i < n; ++i) {
    std::string local = std::string(kStems[stem(rng)]) + (rng() % 2 ? "_" : "") + std::to_string(i);
    o.declare(EntityKind::Class, Iri(ns, local));
  }
  return o;
}

void BM_ComputeAlignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Ontology a = named("http://bench.example.org/a#", n, 1);
  Ontology b = named("http://bench.example.org/b#", n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(compute_alignment(a, b, 0.85));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ComputeAlignment)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNSquared);

void BM_NameSimilarity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(name_similarity("hasAuthorOfRecord", "has_author_of_records"));
}
BENCHMARK(BM_NameSimilarity);

}  // namespace
