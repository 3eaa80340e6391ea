#include <benchmark/benchmark.h>

#include <random>

#include "ontmed/quality.hpp"
#include "ontmed/reasoning.hpp"

namespace {

using namespace ontmed;

// Random DAG with roughly three parents per class, edges pointing to lower indices.
Ontology random_dag(int classes, unsigned seed) {
  std::mt19937_64 rng(seed);
  Ontology o(Iri("http://bench.example.org/dag#", "ontology"));
  std::vector<Iri> ids;
  for (int i = 0; i < classes; ++i) {
    ids.emplace_back("http://bench.example.org/dag#", "C" + std::to_string(i));
    o.declare(EntityKind::Class, ids.back());
  }
  for (int i = 1; i < classes; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    for (int k = 0; k < 3; ++k) o.add(Axiom::sub_class(ids[i], ids[parent(rng)]));
  }
  return o;
}

void BM_SubsumptionClosure(benchmark::State& state) {
  Ontology o = random_dag(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(subsumption_closure(o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SubsumptionClosure)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_RepairRedundancies(benchmark::State& state) {
  Ontology o = random_dag(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(repair_redundancies(o));
}
BENCHMARK(BM_RepairRedundancies)->RangeMultiplier(4)->Range(16, 256);

void BM_Lint(benchmark::State& state) {
  Ontology o = random_dag(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(lint(o));
}
BENCHMARK(BM_Lint)->RangeMultiplier(4)->Range(16, 256);

}  // namespace
