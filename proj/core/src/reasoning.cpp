#include "ontmed/reasoning.hpp"

#include <algorithm>
#include <deque>

namespace ontmed {

Hierarchy::Hierarchy(std::vector<Iri> nodes, const std::vector<std::pair<Iri, Iri>>& edges)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
  const std::size_t n = nodes_.size();
  std::vector<std::vector<std::size_t>> up(n);
  for (const auto& [sub, sup] : edges) up[index_of(sub)].push_back(index_of(sup));

  reach_.assign(n, std::vector<bool>(n, false));
  std::deque<std::size_t> frontier;
  for (std::size_t start = 0; start < n; ++start) {
    auto& row = reach_[start];
    row[start] = true;
    frontier.assign(1, start);
    while (!frontier.empty()) {
      std::size_t cur = frontier.front();
      frontier.pop_front();
      for (std::size_t next : up[cur]) {
        if (!row[next]) {
          row[next] = true;
          frontier.push_back(next);
        }
      }
    }
  }
}

Hierarchy Hierarchy::classes(const Ontology& o) {
  std::vector<std::pair<Iri, Iri>> edges;
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::SubClassOf) {
      edges.emplace_back(ax.first, ax.second);
    } else if (ax.kind == AxiomKind::EquivalentClasses) {
      edges.emplace_back(ax.first, ax.second);
      edges.emplace_back(ax.second, ax.first);
    }
  }
  return Hierarchy(o.classes(), edges);
}

Hierarchy Hierarchy::properties(const Ontology& o) {
  std::vector<std::pair<Iri, Iri>> edges;
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::SubPropertyOf) edges.emplace_back(ax.first, ax.second);
  }
  return Hierarchy(o.properties(), edges);
}

bool Hierarchy::subsumed(const Iri& sub, const Iri& sup) const {
  auto a = index_.find(sub);
  auto b = index_.find(sup);
  if (a == index_.end() || b == index_.end()) return false;
  return reach_[a->second][b->second];
}

std::vector<Iri> Hierarchy::ancestors(const Iri& x) const {
  std::vector<Iri> out;
  auto it = index_.find(x);
  if (it == index_.end()) return out;
  const auto& row = reach_[it->second];
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (row[j]) out.push_back(nodes_[j]);
  }
  return out;
}

std::vector<Iri> Hierarchy::descendants(const Iri& x) const {
  std::vector<Iri> out;
  auto it = index_.find(x);
  if (it == index_.end()) return out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (reach_[i][it->second]) out.push_back(nodes_[i]);
  }
  return out;
}

std::set<IriPair> Hierarchy::pairs() const {
  std::set<IriPair> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (reach_[i][j]) out.emplace_hint(out.end(), nodes_[i], nodes_[j]);
    }
  }
  return out;
}

DisjointnessIndex::DisjointnessIndex(const Ontology& o, const Hierarchy& classes) {
  for (const auto& ax : o.axioms()) {
    if (ax.kind != AxiomKind::DisjointClasses) continue;
    auto below_a = classes.descendants(ax.first);
    auto below_b = classes.descendants(ax.second);
    for (const auto& x : below_a) {
      for (const auto& y : below_b) {
        if (x <= y) {
          pairs_.emplace(x, y);
        } else {
          pairs_.emplace(y, x);
        }
        if (x == y) unsatisfiable_.insert(x);
      }
    }
  }
}

bool DisjointnessIndex::disjoint(const Iri& x, const Iri& y) const {
  return x <= y ? pairs_.contains({x, y}) : pairs_.contains({y, x});
}

std::set<IriPair> subsumption_closure(const Ontology& o) { return Hierarchy::classes(o).pairs(); }

std::set<IriPair> disjointness_closure(const Ontology& o) {
  return DisjointnessIndex(o, Hierarchy::classes(o)).pairs();
}

std::set<Iri> unsatisfiable_classes(const Ontology& o) {
  return DisjointnessIndex(o, Hierarchy::classes(o)).unsatisfiable();
}

std::set<Iri> signature(const Ontology& o) {
  std::set<Iri> out;
  for (const auto& [iri, _] : o.entities()) out.insert(out.end(), iri);
  return out;
}

std::set<IriPair> property_closure(const Ontology& o) { return Hierarchy::properties(o).pairs(); }

}  // namespace ontmed
