#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ontmed/ontology.hpp"

namespace ontmed {

using IriPair = std::pair<Iri, Iri>;

/// Reflexive-transitive closure of SubClassOf, with EquivalentClasses(a, b)
/// contributing both a ⊑ b and b ⊑ a. (x, y) means x ⊑ y.
std::set<IriPair> subsumption_closure(const Ontology& o);

/// Unordered class pairs {X, Y} (stored with first <= second) such that some
/// DisjointClasses(A, B) has X ⊑ A and Y ⊑ B. X may equal Y.
std::set<IriPair> disjointness_closure(const Ontology& o);

/// Classes subsumed by both members of a disjointness-closure pair.
std::set<Iri> unsatisfiable_classes(const Ontology& o);

/// Every declared entity IRI.
std::set<Iri> signature(const Ontology& o);

/// Reflexive-transitive closure of SubPropertyOf over declared properties.
std::set<IriPair> property_closure(const Ontology& o);

/// Dense reachability over one entity kind's hierarchy.
///
/// Built once from an ontology and shared by the quality detectors, the
/// aligner and the mediator, which all need repeated subsumption lookups.
class Hierarchy {
 public:
  /// Class hierarchy: SubClassOf edges plus both directions of equivalences.
  static Hierarchy classes(const Ontology& o);
  /// Property hierarchy: SubPropertyOf edges.
  static Hierarchy properties(const Ontology& o);

  const std::vector<Iri>& nodes() const { return nodes_; }
  bool contains(const Iri& iri) const { return index_.contains(iri); }

  /// sub ⊑ sup, reflexive. False for unknown nodes.
  bool subsumed(const Iri& sub, const Iri& sup) const;

  /// All y with x ⊑ y (including x), canonical order.
  std::vector<Iri> ancestors(const Iri& x) const;
  /// All y with y ⊑ x (including x), canonical order.
  std::vector<Iri> descendants(const Iri& x) const;

  std::set<IriPair> pairs() const;

 private:
  Hierarchy(std::vector<Iri> nodes, const std::vector<std::pair<Iri, Iri>>& edges);

  std::size_t index_of(const Iri& iri) const { return index_.at(iri); }

  std::vector<Iri> nodes_;
  std::map<Iri, std::size_t> index_;
  std::vector<std::vector<bool>> reach_;
};

/// Disjointness pairs and unsatisfiable classes computed from one Hierarchy.
class DisjointnessIndex {
 public:
  DisjointnessIndex(const Ontology& o, const Hierarchy& classes);

  /// {x, y} is in the disjointness closure.
  bool disjoint(const Iri& x, const Iri& y) const;
  const std::set<IriPair>& pairs() const { return pairs_; }
  const std::set<Iri>& unsatisfiable() const { return unsatisfiable_; }

 private:
  std::set<IriPair> pairs_;
  std::set<Iri> unsatisfiable_;
};

}  // namespace ontmed
