#include "ontmed/ontology.hpp"

#include <algorithm>
#include <utility>

namespace ontmed {

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Class: return "Class";
    case EntityKind::ObjectProperty: return "ObjectProperty";
    case EntityKind::Individual: return "Individual";
  }
  return "?";
}

std::string_view to_string(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::SubClassOf: return "SubClassOf";
    case AxiomKind::EquivalentClasses: return "EquivalentClasses";
    case AxiomKind::DisjointClasses: return "DisjointClasses";
    case AxiomKind::SubPropertyOf: return "SubPropertyOf";
    case AxiomKind::Domain: return "Domain";
    case AxiomKind::Range: return "Range";
    case AxiomKind::ClassAssertion: return "ClassAssertion";
    case AxiomKind::PropertyAssertion: return "PropertyAssertion";
  }
  return "?";
}

Axiom Axiom::sub_class(Iri sub, Iri sup) {
  return Axiom{AxiomKind::SubClassOf, std::move(sub), std::move(sup), {}};
}

Axiom Axiom::equivalent(Iri a, Iri b) {
  Axiom ax{AxiomKind::EquivalentClasses, std::move(a), std::move(b), {}};
  ax.canonicalize();
  return ax;
}

Axiom Axiom::disjoint(Iri a, Iri b) {
  Axiom ax{AxiomKind::DisjointClasses, std::move(a), std::move(b), {}};
  ax.canonicalize();
  return ax;
}

Axiom Axiom::sub_property(Iri sub, Iri sup) {
  return Axiom{AxiomKind::SubPropertyOf, std::move(sub), std::move(sup), {}};
}

Axiom Axiom::domain(Iri property, Iri cls) {
  return Axiom{AxiomKind::Domain, std::move(property), std::move(cls), {}};
}

Axiom Axiom::range(Iri property, Iri cls) {
  return Axiom{AxiomKind::Range, std::move(property), std::move(cls), {}};
}

Axiom Axiom::class_assertion(Iri individual, Iri cls) {
  return Axiom{AxiomKind::ClassAssertion, std::move(individual), std::move(cls), {}};
}

Axiom Axiom::property_assertion(Iri subject, Iri property, Iri object) {
  return Axiom{AxiomKind::PropertyAssertion, std::move(subject), std::move(property),
               std::move(object)};
}

void Axiom::canonicalize() {
  if ((kind == AxiomKind::EquivalentClasses || kind == AxiomKind::DisjointClasses) &&
      second < first) {
    std::swap(first, second);
  }
}

std::vector<Iri> Axiom::arguments() const {
  if (kind == AxiomKind::PropertyAssertion) return {first, second, third};
  return {first, second};
}

bool Axiom::mentions(const Iri& iri) const {
  return first == iri || second == iri || (kind == AxiomKind::PropertyAssertion && third == iri);
}

std::vector<EntityKind> argument_kinds(AxiomKind kind) {
  using K = EntityKind;
  switch (kind) {
    case AxiomKind::SubClassOf:
    case AxiomKind::EquivalentClasses:
    case AxiomKind::DisjointClasses: return {K::Class, K::Class};
    case AxiomKind::SubPropertyOf: return {K::ObjectProperty, K::ObjectProperty};
    case AxiomKind::Domain:
    case AxiomKind::Range: return {K::ObjectProperty, K::Class};
    case AxiomKind::ClassAssertion: return {K::Individual, K::Class};
    case AxiomKind::PropertyAssertion: return {K::Individual, K::ObjectProperty, K::Individual};
  }
  return {};
}

const Entity& Ontology::declare(EntityKind kind, const Iri& iri, std::set<std::string> labels) {
  auto it = entities_.find(iri);
  if (it != entities_.end()) {
    if (it->second.kind != kind) {
      throw OntologyError("conflicting declaration: " + iri.str() + " is " +
                          std::string(to_string(it->second.kind)) + ", redeclared as " +
                          std::string(to_string(kind)));
    }
    it->second.labels.merge(labels);
    return it->second;
  }
  auto [pos, _] = entities_.emplace(iri, Entity{kind, iri, std::move(labels)});
  return pos->second;
}

void Ontology::add_label(const Iri& iri, std::string label) {
  auto it = entities_.find(iri);
  if (it == entities_.end()) throw OntologyError("undeclared entity " + iri.str());
  it->second.labels.insert(std::move(label));
}

bool Ontology::add(Axiom axiom) {
  axiom.canonicalize();
  auto kinds = argument_kinds(axiom.kind);
  auto args = axiom.arguments();
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto actual = kind_of(args[i]);
    if (!actual) throw OntologyError("undeclared entity " + args[i].str());
    if (*actual != kinds[i]) {
      throw OntologyError("kind mismatch in " + std::string(to_string(axiom.kind)) + ": " +
                          args[i].str() + " is " + std::string(to_string(*actual)) +
                          ", expected " + std::string(to_string(kinds[i])));
    }
  }
  return axioms_.insert(std::move(axiom)).second;
}

bool Ontology::remove(const Axiom& axiom) { return axioms_.erase(axiom) > 0; }

std::optional<EntityKind> Ontology::kind_of(const Iri& iri) const {
  auto it = entities_.find(iri);
  if (it == entities_.end()) return std::nullopt;
  return it->second.kind;
}

const Entity* Ontology::find(const Iri& iri) const {
  auto it = entities_.find(iri);
  return it == entities_.end() ? nullptr : &it->second;
}

std::vector<Iri> Ontology::entities_of(EntityKind kind) const {
  std::vector<Iri> out;
  for (const auto& [iri, e] : entities_) {
    if (e.kind == kind) out.push_back(iri);
  }
  return out;
}

std::vector<Axiom> Ontology::axioms_of(AxiomKind kind) const {
  std::vector<Axiom> out;
  for (const auto& ax : axioms_) {
    if (ax.kind == kind) out.push_back(ax);
  }
  return out;
}

}  // namespace ontmed
